"""Hyperbolic triangle trigonometry and holonomy.

Builds a right triangle at the apex, checks the two independent area
formulas, the law of sines, and the Gauss-Bonnet prediction for the
displacement of a vector transported around the triangle.
"""

import math

import numpy as np

import hypflock as hf
from hypflock import triangles

tri = hf.HTriangle(
    np.array([1.0, 0.0, 0.0]),
    np.array([math.cosh(1), math.sinh(1), 0.0]),
    np.array([math.cosh(1), 0.0, math.sinh(1)]),
)

a, b, c = tri.sides
print("sides (a, b, c):", (a, b, c))
print("hyperbolic Pythagoras cosh a = cosh b cosh c:",
      math.cosh(a), "=", math.cosh(b) * math.cosh(c))

angs = triangles.angles(tri)
print("\nangles:", angs, " (sum - pi =", sum(angs) - math.pi, ")")
print("area by angle deficit:  ", hf.area_angle_deficit(tri))
print("area by L'Huilier:      ", hf.area_lhuilier(tri))
print("law of sines residual:  ", hf.law_of_sines_residual(tri))
print("vertex determinant:     ", triangles.coplanarity_det(tri),
      " (= sinh(1)^2 =", math.sinh(1.0) ** 2, ")")

# Transporting a tangent vector around the triangle rotates it by the area.
rng = np.random.default_rng(0)
v = hf.project_tangent(tri.A, rng.standard_normal(3))
print("\nholonomy defect (measured): ", hf.holonomy_defect(tri, v))
print("holonomy defect (predicted):",
      triangles.holonomy_predicted(tri, v))

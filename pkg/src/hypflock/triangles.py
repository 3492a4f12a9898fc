"""Geodesic triangles on the 2-dimensional hyperboloid: interior angles,
area by two independent formulas, law of sines, and the holonomy defect of
transporting a tangent vector around the triangle.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .geometry import distance, log_map, parallel_transport
from .minkowski import check_point, minkowski_inner, tangent_norm

EPS_DEGENERATE = 1e-8


class DegenerateTriangleError(ValueError):
    """Vertices too close or collinear for the closed-form angle computations."""


@dataclass(frozen=True, eq=False)
class HTriangle:
    """Triangle with vertices A, B, C on the hyperboloid in R^3 (d = 2)."""

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray

    def __post_init__(self):
        for v in (self.A, self.B, self.C):
            check_point(v)
            if v.shape[-1] != 3:
                raise ValueError("triangles are defined on the d = 2 hyperboloid")

    @cached_property
    def sides(self):
        """(a, b, c) = (d(B,C), d(C,A), d(A,B))."""
        return (
            float(distance(self.B, self.C)),
            float(distance(self.C, self.A)),
            float(distance(self.A, self.B)),
        )

    @cached_property
    def vertices(self):
        return (self.A, self.B, self.C)


def _check_nondegenerate(tri, eps=EPS_DEGENERATE):
    a, b, c = tri.sides
    if min(a, b, c) < eps:
        raise DegenerateTriangleError(f"side length below {eps}")


def interior_angle(tri, vertex, eps=EPS_DEGENERATE):
    """Interior angle at a vertex ('A', 'B' or 'C') from the hyperbolic law of
    cosines: cos(angle A) = (cosh b cosh c - cosh a) / (sinh b sinh c)."""
    _check_nondegenerate(tri, eps)
    a, b, c = tri.sides
    opp, s1, s2 = {"A": (a, b, c), "B": (b, c, a), "C": (c, a, b)}[vertex]
    denom = np.sinh(s1) * np.sinh(s2)
    if denom < eps:
        raise DegenerateTriangleError("vanishing sinh factor in law of cosines")
    arg = (np.cosh(s1) * np.cosh(s2) - np.cosh(opp)) / denom
    return float(np.arccos(np.clip(arg, -1.0, 1.0)))


def angles(tri, eps=EPS_DEGENERATE):
    return tuple(interior_angle(tri, v, eps) for v in "ABC")


def area_angle_deficit(tri, eps=EPS_DEGENERATE):
    """Area as the angle deficit pi - (angle A + angle B + angle C)."""
    return np.pi - sum(angles(tri, eps))


def area_lhuilier(tri, vertex="A", eps=EPS_DEGENERATE):
    """Area from two sides and the included angle:

    tan(Area/2) = tanh(b/2) tanh(c/2) sin A / (1 - tanh(b/2) tanh(c/2) cos A).

    Uses the two-argument arctangent so the result lands in (0, pi).
    """
    _check_nondegenerate(tri, eps)
    a, b, c = tri.sides
    _, s1, s2 = {"A": (a, b, c), "B": (b, c, a), "C": (c, a, b)}[vertex]
    ang = interior_angle(tri, vertex, eps)
    tt = np.tanh(s1 / 2.0) * np.tanh(s2 / 2.0)
    return float(2.0 * np.arctan2(tt * np.sin(ang), 1.0 - tt * np.cos(ang)))


def law_of_sines_residual(tri, eps=EPS_DEGENERATE):
    """|sinh b sinh c sin A| - |det(OA | OB | OC)|; vanishes identically."""
    a, b, c = tri.sides
    ang = interior_angle(tri, "A", eps)
    det = np.linalg.det(np.column_stack(tri.vertices))
    return float(abs(np.sinh(b) * np.sinh(c) * np.sin(ang)) - abs(det))


def coplanarity_det(tri):
    """det of the embedded vertices; zero iff vertices lie on one geodesic plane."""
    return float(np.linalg.det(np.column_stack(tri.vertices)))


def transport_around(tri, v):
    """Transport v at vertex A around the loop A -> C -> B -> A."""
    u = parallel_transport(tri.A, tri.C, v)
    u = parallel_transport(tri.C, tri.B, u)
    return parallel_transport(tri.B, tri.A, u)


def holonomy_defect(tri, v):
    """Norm of the change in v after transport around the triangle.

    Equals ||v|| * sqrt(2 - 2 cos(Area)) by the Gauss-Bonnet theorem.
    """
    return float(tangent_norm(transport_around(tri, v) - v, eps=np.inf))


def holonomy_predicted(tri, v, eps=EPS_DEGENERATE):
    """Closed-form holonomy magnitude ||v|| sqrt(2 - 2 cos(Area))."""
    area = area_lhuilier(tri, eps=eps)
    return float(tangent_norm(v)) * np.sqrt(max(0.0, 2.0 - 2.0 * np.cos(area)))


def tangent_angle_oracle(tri, vertex="A"):
    """Interior angle recomputed from log-map tangent directions.

    Independent route used to cross-check the law-of-cosines angles.
    """
    base, p1, p2 = {
        "A": (tri.A, tri.B, tri.C),
        "B": (tri.B, tri.C, tri.A),
        "C": (tri.C, tri.A, tri.B),
    }[vertex]
    u = log_map(base, p1)
    w = log_map(base, p2)
    nu, nw = tangent_norm(u), tangent_norm(w)
    if nu < EPS_DEGENERATE or nw < EPS_DEGENERATE:
        raise DegenerateTriangleError("coincident vertices in tangent-angle oracle")
    arg = minkowski_inner(u, w) / (nu * nw)
    return float(np.arccos(np.clip(arg, -1.0, 1.0)))

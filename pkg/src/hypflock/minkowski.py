"""Minkowski bilinear algebra on R^{d+1} and the hyperboloid constraint layer.

Points live on the upper sheet of <x,x>_M = -1 (x^0 > 0); tangent vectors at x
satisfy <x,v>_M = 0.  All functions accept arrays of shape (..., d+1) with the
timelike coordinate at index 0 of the last axis.
"""

import numpy as np

# Default tolerance for the hyperboloid / tangency constraints.
EPS_CONSTRAINT = 1e-10

# cosh-scale cancellation degrades the bilinear form past this magnitude.
X0_OVERFLOW = 1e8


class ConstraintError(ValueError):
    """A point or tangent vector violates its hyperboloid constraint."""


class ProjectionError(RuntimeError):
    """Raw vector cannot be projected back to the hyperboloid (timelike loss)."""

    def __init__(self, message, particle=None, time=None):
        super().__init__(message)
        self.particle = particle
        self.time = time


def minkowski_inner(a, b):
    """Minkowski bilinear form -a^0 b^0 + sum_k a^k b^k over the last axis."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape[-1] != b.shape[-1]:
        raise ValueError(
            f"dimension mismatch: {a.shape[-1]} vs {b.shape[-1]}"
        )
    if a.shape[-1] < 2:
        raise ValueError("need at least one spacelike coordinate (d >= 1)")
    return np.sum(a[..., 1:] * b[..., 1:], axis=-1) - a[..., 0] * b[..., 0]


def from_chart(u):
    """Lift chart coordinates (x^1,...,x^d) to the hyperboloid.

    The timelike coordinate is sqrt(1 + |u|^2), so the result satisfies
    <x,x>_M = -1 exactly up to round-off.
    """
    u = np.asarray(u, dtype=float)
    if not np.all(np.isfinite(u)):
        raise ValueError("non-finite chart coordinates")
    x0 = np.sqrt(1.0 + np.sum(u * u, axis=-1, keepdims=True))
    return np.concatenate([x0, u], axis=-1)


def to_chart(x):
    """Drop the timelike coordinate; inverse of from_chart on valid points."""
    return np.asarray(x, dtype=float)[..., 1:]


def project_point(raw):
    """Radially project a timelike vector back onto the upper hyperboloid sheet.

    Returns raw / sqrt(-<raw,raw>_M).  Idempotent on valid points.  Raises
    ProjectionError when the input has drifted spacelike/null or onto the
    lower sheet, which signals integrator blow-up.
    """
    raw = np.asarray(raw, dtype=float)
    q = minkowski_inner(raw, raw)
    if np.any(q >= 0.0) or np.any(raw[..., 0] <= 0.0):
        raise ProjectionError("vector is not timelike with positive x^0")
    return raw / np.sqrt(-q)[..., None]


def project_tangent(x, raw):
    """Minkowski-orthogonal projection of raw onto the tangent space at x.

    v' = raw + <x,raw>_M x, which satisfies <x,v'>_M = 0 by <x,x>_M = -1.
    Idempotent, linear, identity on already-tangent vectors.
    """
    x = np.asarray(x, dtype=float)
    raw = np.asarray(raw, dtype=float)
    return raw + minkowski_inner(x, raw)[..., None] * x


def tangent_norm(v, eps=EPS_CONSTRAINT):
    """Riemannian norm sqrt(<v,v>_M) of a tangent vector.

    Tangent spaces of the hyperboloid are spacelike, so the radicand is
    nonnegative for valid tangents; small negative round-off is clamped,
    anything beyond -eps raises ConstraintError.
    """
    q = minkowski_inner(v, v)
    if np.any(q < -eps):
        raise ConstraintError(f"negative tangent norm radicand: {np.min(q)}")
    return np.sqrt(np.maximum(q, 0.0))


def point_residual(x):
    """|<x,x>_M + 1|, the hyperboloid constraint violation."""
    return np.abs(minkowski_inner(x, x) + 1.0)


def tangency_residual(x, v):
    """|<x,v>_M|, the tangency constraint violation."""
    return np.abs(minkowski_inner(x, v))


def check_point(x, eps=EPS_CONSTRAINT):
    """Validate the hyperboloid constraints; raise ConstraintError on failure."""
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise ConstraintError("non-finite point components")
    res = point_residual(x)
    if np.any(res > eps):
        raise ConstraintError(f"|<x,x>_M + 1| = {np.max(res)} > {eps}")
    if np.any(x[..., 0] <= 0.0):
        raise ConstraintError("x^0 <= 0 (wrong hyperboloid sheet)")
    return x


def check_tangent(x, v, eps=EPS_CONSTRAINT):
    """Validate tangency of v at x; raise ConstraintError on failure."""
    v = np.asarray(v, dtype=float)
    if not np.all(np.isfinite(v)):
        raise ConstraintError("non-finite tangent components")
    res = tangency_residual(x, v)
    if np.any(res > eps):
        raise ConstraintError(f"|<x,v>_M| = {np.max(res)} > {eps}")
    return v


def x0_overflowing(x):
    """True when any timelike coordinate exceeds the accuracy-loss threshold."""
    return bool(np.any(np.asarray(x, dtype=float)[..., 0] > X0_OVERFLOW))

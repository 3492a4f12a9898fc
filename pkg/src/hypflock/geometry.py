"""Closed-form geometry of the hyperboloid: geodesics, distance, log map,
parallel transport, covariant acceleration.

Chart-based ODE oracles (fixed-step RK4 on the intrinsic geodesic and
parallel-transport equations) are shipped alongside the closed forms so the
two routes can be cross-checked on demand.
"""

from dataclasses import dataclass

import numpy as np
from numba import njit

from .minkowski import (
    EPS_CONSTRAINT,
    check_point,
    check_tangent,
    minkowski_inner,
    tangent_norm,
    to_chart,
)

ORACLE_STEP = 1e-4  # default RK4 step per unit arclength for the oracles


@dataclass(frozen=True, eq=False)
class Geodesic:
    """Unit-speed geodesic through `start` with initial velocity `direction`."""

    start: np.ndarray
    direction: np.ndarray

    def __post_init__(self):
        check_point(self.start)
        check_tangent(self.start, self.direction)
        nrm = tangent_norm(self.direction)
        if nrm > 0 and abs(nrm - 1.0) > EPS_CONSTRAINT:
            raise ValueError(f"direction must be unit or zero, got norm {nrm}")

    def __call__(self, s):
        return geodesic_eval(self.start, self.direction, s)


def geodesic_eval(start, direction, s):
    """Evaluate the geodesic cosh(s) x + sinh(s) v and its velocity at arclength s."""
    start = np.asarray(start, dtype=float)
    direction = np.asarray(direction, dtype=float)
    c, sh = np.cosh(s), np.sinh(s)
    point = c * start + sh * direction
    velocity = sh * start + c * direction
    return point, velocity


def distance(p, q):
    """Geodesic distance arccosh(-<p,q>_M); the clamp at 1 absorbs round-off."""
    return np.arccosh(np.maximum(1.0, -minkowski_inner(p, q)))


def log_map(p, q):
    """Tangent vector at p whose geodesic reaches q at its own arclength.

    Equals s * (q - cosh(s) p) / sinh(s) with s = d(p,q); returns the zero
    tangent for coincident points.
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    s = distance(p, q)
    out = np.zeros(np.broadcast_shapes(p.shape, q.shape))
    small = s < 1e-15
    if np.all(small):
        return out
    s_safe = np.where(small, 1.0, s)
    v = s_safe[..., None] * (q - np.cosh(s_safe)[..., None] * p) / np.sinh(s_safe)[..., None]
    return np.where(small[..., None], 0.0, v)


def parallel_transport(p, q, v):
    """Transport tangent v from p to q along the connecting geodesic.

    u = v + <v,q>_M / (1 - <p,q>_M) * (p + q).  The denominator is >= 2
    because <p,q>_M <= -1, so there is no singularity; p = q is the identity.
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    v = np.asarray(v, dtype=float)
    coef = minkowski_inner(v, q) / (1.0 - minkowski_inner(p, q))
    return v + coef[..., None] * (p + q)


def covariant_accel(x, v, xdd):
    """Intrinsic acceleration of a constraint-respecting curve.

    nabla_v v = xdd - <v,v>_M x; vanishes exactly on geodesics.
    """
    x = np.asarray(x, dtype=float)
    xdd = np.asarray(xdd, dtype=float)
    return xdd - minkowski_inner(v, v)[..., None] * x


# ---------------------------------------------------------------------------
# Chart-based oracles.  The intrinsic metric in the chart u = (x^1,...,x^d) is
# g_ij(u) = delta_ij - u^i u^j / (1 + |u|^2) with Christoffel symbols
# Gamma^k_ij = -u^k g_ij, giving the geodesic equation  u''^k = u^k g(u', u')
# and the transport equation  w'^k = g(w, u') u^k  along a geodesic.
# ---------------------------------------------------------------------------


@njit(cache=True)
def _chart_g(u, a, b):
    # g(a, b) at chart point u
    dot_ab = 0.0
    dot_au = 0.0
    dot_bu = 0.0
    uu = 0.0
    for m in range(u.shape[0]):
        dot_ab += a[m] * b[m]
        dot_au += a[m] * u[m]
        dot_bu += b[m] * u[m]
        uu += u[m] * u[m]
    return dot_ab - dot_au * dot_bu / (1.0 + uu)


@njit(cache=True)
def _geodesic_rhs(u, ud, acc):
    c = _chart_g(u, ud, ud)
    for k in range(u.shape[0]):
        acc[k] = u[k] * c


@njit(cache=True)
def _chart_geodesic_rk4(u0, ud0, s, h):
    # classical RK4 on the first-order system y = (u, u')
    d = u0.shape[0]
    n = max(1, int(np.ceil(abs(s) / h)))
    hs = s / n
    u = u0.copy()
    ud = ud0.copy()
    a1 = np.empty(d)
    a2 = np.empty(d)
    a3 = np.empty(d)
    a4 = np.empty(d)
    for _ in range(n):
        _geodesic_rhs(u, ud, a1)
        ud2 = ud + 0.5 * hs * a1
        _geodesic_rhs(u + 0.5 * hs * ud, ud2, a2)
        ud3 = ud + 0.5 * hs * a2
        _geodesic_rhs(u + 0.5 * hs * ud2, ud3, a3)
        ud4 = ud + hs * a3
        _geodesic_rhs(u + hs * ud3, ud4, a4)
        u = u + hs / 6.0 * (ud + 2.0 * ud2 + 2.0 * ud3 + ud4)
        ud = ud + hs / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4)
    return u, ud


def chart_geodesic_oracle(u0, udot0, s, h=ORACLE_STEP):
    """Integrate the chart geodesic ODE with classical RK4; returns chart coords.

    Test oracle for geodesic_eval; the step h is per unit arclength.
    """
    u0 = np.asarray(u0, dtype=float)
    udot0 = np.asarray(udot0, dtype=float)
    if h <= 0:
        raise ValueError("oracle step must be positive")
    u, _ = _chart_geodesic_rk4(u0.copy(), udot0.copy(), float(s), float(h))
    if not np.all(np.isfinite(u)):
        raise RuntimeError("chart geodesic oracle overflowed")
    return u


def chart_geodesic_oracle_energy(u0, udot0, s, h=ORACLE_STEP, samples=16):
    """g(u', u') sampled along the oracle trajectory (constant on geodesics)."""
    u0 = np.asarray(u0, dtype=float)
    udot0 = np.asarray(udot0, dtype=float)
    vals = np.empty(samples + 1)
    for k in range(samples + 1):
        u, ud = _chart_geodesic_rk4(u0.copy(), udot0.copy(), float(s) * k / samples, float(h))
        vals[k] = _chart_g(u, ud, ud)
    return vals


@njit(cache=True)
def _transport_rhs(p, w, s, u, out):
    # w'^k = g(w, gamma') x^k along Gamma(s) = cosh(s) p + sinh(s) w
    d = p.shape[0] - 1
    ch = np.cosh(s)
    sh = np.sinh(s)
    x = np.empty(d)
    gd = np.empty(d)
    for k in range(d):
        x[k] = ch * p[k + 1] + sh * w[k + 1]
        gd[k] = sh * p[k + 1] + ch * w[k + 1]
    c = _chart_g(x, u, gd)
    for k in range(d):
        out[k] = c * x[k]


@njit(cache=True)
def _transport_rk4(p, w, v_chart, length, h):
    d = p.shape[0] - 1
    n = max(1, int(np.ceil(length / h)))
    hs = length / n
    u = v_chart.copy()
    k1 = np.empty(d)
    k2 = np.empty(d)
    k3 = np.empty(d)
    k4 = np.empty(d)
    s = 0.0
    for _ in range(n):
        _transport_rhs(p, w, s, u, k1)
        _transport_rhs(p, w, s + 0.5 * hs, u + 0.5 * hs * k1, k2)
        _transport_rhs(p, w, s + 0.5 * hs, u + 0.5 * hs * k2, k3)
        _transport_rhs(p, w, s + hs, u + hs * k3, k4)
        u = u + hs / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        s += hs
    return u


def transport_ode_oracle(p, q, v, h=ORACLE_STEP):
    """Integrate the chart parallel-transport ODE from p to q; oracle for
    parallel_transport.

    Chart components of a tangent vector are its spatial ambient components,
    so conversion in and out of the chart is a slice plus one lift.
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    v = np.asarray(v, dtype=float)
    if h <= 0:
        raise ValueError("oracle step must be positive")
    length = float(distance(p, q))
    if length < 1e-15:
        return v.copy()
    w = log_map(p, q) / length
    u = _transport_rk4(p, w, v[1:].copy(), length, float(h))
    if not np.all(np.isfinite(u)):
        raise RuntimeError("transport oracle overflowed")
    # lift chart components back to the ambient tangent space at q
    uq = to_chart(q)
    u0 = float(np.dot(u, uq)) / q[0]
    return np.concatenate([[u0], u])

"""Numba kernels for the N-body right-hand side, the projected RK4 loop, the
hyperbolic Kuramoto integrators, and the cubic-cost triangle-loop monitor.

Communication-weight kinds are encoded as integers:
0 constant(c), 1 distance kernel (1+d^2)^(-beta), 2 exp(-lambda d),
3 cosh of the distance (= -<x,y>_M).
"""

import numpy as np
from numba import njit

KIND_CONSTANT = 0
KIND_CS = 1
KIND_EXP = 2
KIND_COSH = 3


@njit(cache=True)
def _mink(a, b):
    s = -a[0] * b[0]
    for k in range(1, a.shape[0]):
        s += a[k] * b[k]
    return s


@njit(cache=True)
def _psi_from_inner(xx, kind, param):
    if kind == 0:
        return param
    if kind == 3:
        return -xx
    arg = -xx
    if arg < 1.0:
        arg = 1.0
    dist = np.arccosh(arg)
    if kind == 1:
        return (1.0 + dist * dist) ** (-param)
    return np.exp(-param * dist)


@njit(cache=True)
def hcs_rhs_kernel(x, v, kappa, kind, param, ax, av):
    N, dp1 = x.shape
    for i in range(N):
        vv = _mink(v[i], v[i])
        for c in range(dp1):
            ax[i, c] = v[i, c]
            av[i, c] = vv * x[i, c]
        for j in range(N):
            xx = _mink(x[i], x[j])
            xv = _mink(x[i], v[j])
            psi = _psi_from_inner(xx, kind, param)
            coef = xv / (1.0 - xx)
            w = kappa / N * psi
            for c in range(dp1):
                av[i, c] += w * (v[j, c] - v[i, c] + coef * (x[i, c] + x[j, c]))


@njit(cache=True)
def integrate_kernel(x, v, nsteps, dt, kappa, kind, param, project):
    """Classical RK4 on the flat (x, v) representation, then per-particle
    radial + tangential projection after each full step.

    Returns (x, v, status); status is -1 on success, else the index of the
    particle whose position lost timelikeness.
    """
    N, dp1 = x.shape
    k1x = np.empty((N, dp1))
    k1v = np.empty((N, dp1))
    k2x = np.empty((N, dp1))
    k2v = np.empty((N, dp1))
    k3x = np.empty((N, dp1))
    k3v = np.empty((N, dp1))
    k4x = np.empty((N, dp1))
    k4v = np.empty((N, dp1))
    x = x.copy()
    v = v.copy()
    for _ in range(nsteps):
        hcs_rhs_kernel(x, v, kappa, kind, param, k1x, k1v)
        hcs_rhs_kernel(x + 0.5 * dt * k1x, v + 0.5 * dt * k1v, kappa, kind, param, k2x, k2v)
        hcs_rhs_kernel(x + 0.5 * dt * k2x, v + 0.5 * dt * k2v, kappa, kind, param, k3x, k3v)
        hcs_rhs_kernel(x + dt * k3x, v + dt * k3v, kappa, kind, param, k4x, k4v)
        x = x + dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
        v = v + dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
        if project:
            for i in range(N):
                q = _mink(x[i], x[i])
                if q >= 0.0 or x[i, 0] <= 0.0:
                    return x, v, i
                r = 1.0 / np.sqrt(-q)
                for c in range(dp1):
                    x[i, c] *= r
                xv = _mink(x[i], v[i])
                for c in range(dp1):
                    v[i, c] += xv * x[i, c]
    return x, v, -1


@njit(cache=True)
def hk_first_rhs_kernel(alpha, omega, kappa, out):
    N = alpha.shape[0]
    for i in range(N):
        s = 0.0
        for j in range(N):
            s += np.sinh(alpha[j] - alpha[i])
        out[i] = omega[i] + kappa / N * s


@njit(cache=True)
def hk_first_integrate(alpha, omega, kappa, nsteps, dt):
    N = alpha.shape[0]
    k1 = np.empty(N)
    k2 = np.empty(N)
    k3 = np.empty(N)
    k4 = np.empty(N)
    a = alpha.copy()
    for _ in range(nsteps):
        hk_first_rhs_kernel(a, omega, kappa, k1)
        hk_first_rhs_kernel(a + 0.5 * dt * k1, omega, kappa, k2)
        hk_first_rhs_kernel(a + 0.5 * dt * k2, omega, kappa, k3)
        hk_first_rhs_kernel(a + dt * k3, omega, kappa, k4)
        a = a + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return a


@njit(cache=True)
def hk_second_rhs_kernel(alpha, alphadot, kappa, kind, param, out):
    # psi evaluated at the geodesic embedding: <x_i,x_j>_M = -cosh(a_i - a_j)
    N = alpha.shape[0]
    for i in range(N):
        s = 0.0
        for j in range(N):
            xx = -np.cosh(alpha[i] - alpha[j])
            s += _psi_from_inner(xx, kind, param) * (alphadot[j] - alphadot[i])
        out[i] = kappa / N * s


@njit(cache=True)
def hk_second_integrate(alpha, alphadot, kappa, kind, param, nsteps, dt):
    N = alpha.shape[0]
    k1 = np.empty(N)
    k2 = np.empty(N)
    k3 = np.empty(N)
    k4 = np.empty(N)
    a = alpha.copy()
    ad = alphadot.copy()
    for _ in range(nsteps):
        hk_second_rhs_kernel(a, ad, kappa, kind, param, k1)
        ad2 = ad + 0.5 * dt * k1
        hk_second_rhs_kernel(a + 0.5 * dt * ad, ad2, kappa, kind, param, k2)
        ad3 = ad + 0.5 * dt * k2
        hk_second_rhs_kernel(a + 0.5 * dt * ad2, ad3, kappa, kind, param, k3)
        ad4 = ad + dt * k3
        hk_second_rhs_kernel(a + dt * ad3, ad4, kappa, kind, param, k4)
        a = a + dt / 6.0 * (ad + 2.0 * ad2 + 2.0 * ad3 + ad4)
        ad = ad + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return a, ad


@njit(cache=True)
def _transport_to(xp, xq, v, out):
    # out = v + <v,xq>/(1-<xp,xq>) (xp+xq)
    coef = _mink(v, xq) / (1.0 - _mink(xp, xq))
    for c in range(v.shape[0]):
        out[c] = v[c] + coef * (xp[c] + xq[c])


@njit(cache=True)
def pair_misalignment_sq_sum(x, v):
    """sum over ordered pairs of ||P_ij v_j - v_i||^2 (explicit transports)."""
    N, dp1 = x.shape
    t = np.empty(dp1)
    d = np.empty(dp1)
    total = 0.0
    for i in range(N):
        for j in range(N):
            _transport_to(x[j], x[i], v[j], t)
            for c in range(dp1):
                d[c] = t[c] - v[i, c]
            total += _mink(d, d)
    return total


@njit(cache=True)
def triangle_loop_defect_sq_sum(x, v):
    """sum over triples (i,j,k) of ||P_ki P_ij P_jk v_k - v_k||^2."""
    N, dp1 = x.shape
    a = np.empty(dp1)
    b = np.empty(dp1)
    c3 = np.empty(dp1)
    d = np.empty(dp1)
    total = 0.0
    for k in range(N):
        for j in range(N):
            _transport_to(x[k], x[j], v[k], a)
            for i in range(N):
                _transport_to(x[j], x[i], a, b)
                _transport_to(x[i], x[k], b, c3)
                for c in range(dp1):
                    d[c] = c3[c] - v[k, c]
                total += _mink(d, d)
    return total

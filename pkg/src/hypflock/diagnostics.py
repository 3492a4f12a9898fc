"""Observables and inequality monitors evaluated on flock-state snapshots:
kinetic energy, transported-velocity misalignment, coplanarity determinants,
and the pair/triple transport inequalities used as runtime monitors.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .geometry import parallel_transport
from .minkowski import minkowski_inner, tangent_norm

LEMMA43_MAX_N = 64  # the triple-loop monitor is Theta(N^3); skip above this


def _gram(a, b):
    """Pairwise Minkowski products G[i, j] = <a_i, b_j>_M."""
    return a[:, 1:] @ b[:, 1:].T - np.outer(a[:, 0], b[:, 0])


def energy(state):
    """Total kinetic energy (1/2) sum_i <v_i, v_i>_M."""
    return 0.5 * float(np.sum(minkowski_inner(state.v, state.v)))


def transported_inner(state):
    """Matrix of g(P_ij v_j, v_i) via the closed form

    <v_i,v_j>_M + <v_i,x_j>_M <v_j,x_i>_M / (1 - <x_i,x_j>_M).
    """
    gvv = _gram(state.v, state.v)
    gvx = _gram(state.v, state.x)  # gvx[i, j] = <v_i, x_j>
    gxx = _gram(state.x, state.x)
    return gvv + gvx * gvx.T / (1.0 - gxx)

def misalignment_matrix(state):
    """Pairwise ||P_ij v_j - v_i|| from the closed-form inner products."""
    speeds_sq = minkowski_inner(state.v, state.v)
    m2 = speeds_sq[:, None] + speeds_sq[None, :] - 2.0 * transported_inner(state)
    return np.sqrt(np.maximum(m2, 0.0))


def misalignment(state, i, j):
    """||P_ij v_j - v_i|| for one ordered pair via the closed form."""
    return float(misalignment_matrix(state)[i, j])


def misalignment_explicit(state, i, j):
    """Same quantity through an explicit parallel transport (two-route check)."""
    moved = parallel_transport(state.x[j], state.x[i], state.v[j])
    return float(tangent_norm(moved - state.v[i], eps=np.inf))


def max_misalignment(state):
    return float(np.max(misalignment_matrix(state)))


def max_distance(state):
    gxx = _gram(state.x, state.x)
    return float(np.max(np.arccosh(np.maximum(1.0, -gxx))))


def coplanarity_det(state, i, j, k):
    """det(x_i | x_j | x_k) of embedded positions; requires d = 2."""
    if state.d != 2:
        raise ValueError("coplanarity determinants are defined on H^2 only")
    return float(np.linalg.det(np.column_stack([state.x[i], state.x[j], state.x[k]])))


def lemma41_max(state):
    """max over ordered pairs i != j of |<x_j,v_i>/(1-<x_i,x_j>)| - ||v_i||.

    Nonpositive for every valid tangent configuration.
    """
    gvx = _gram(state.v, state.x)  # gvx[i, j] = <v_i, x_j>
    gxx = _gram(state.x, state.x)
    speeds = np.sqrt(np.maximum(minkowski_inner(state.v, state.v), 0.0))
    resid = np.abs(gvx) / (1.0 - gxx) - speeds[:, None]
    np.fill_diagonal(resid, -np.inf)
    return float(np.max(resid))


def lemma43_residual(state):
    """9N * (pair misalignment sum) - (triangle-loop defect sum); nonnegative."""
    pair = _kernels.pair_misalignment_sq_sum(state.x, state.v)
    triple = _kernels.triangle_loop_defect_sq_sum(state.x, state.v)
    return float(9.0 * state.N * pair - triple)


def dissipation_rate(state, kappa, weight):
    """Closed-form energy derivative -(kappa/2N) sum_ij psi_ij ||P_ij v_j - v_i||^2."""
    psi = weight(state.x[:, None, :], state.x[None, :, :])
    m = misalignment_matrix(state)
    return -kappa / (2.0 * state.N) * float(np.sum(psi * m * m))


def speed_consensus(state):
    """(min speed, max speed, sqrt(E/N), sqrt(2E/N)).

    Both candidate limiting speeds are reported; the source material is
    ambiguous about the factor of two.
    """
    speeds = np.sqrt(np.maximum(minkowski_inner(state.v, state.v), 0.0))
    e = energy(state)
    return (
        float(np.min(speeds)),
        float(np.max(speeds)),
        float(np.sqrt(e / state.N)),
        float(np.sqrt(2.0 * e / state.N)),
    )


@dataclass
class DiagRecord:
    """One sampled row of run diagnostics."""

    t: float
    energy: float
    max_misalign: float
    max_dist: float
    constraint_drift: float
    coplanarity: tuple = ()
    lemma41_max: float = np.nan
    lemma43_residual: float = np.nan
    dissipation_residual: float = np.nan
    speed_min: float = np.nan
    speed_max: float = np.nan

    @property
    def log10_energy(self):
        return np.log10(self.energy) if self.energy > 0 else -np.inf


def compute_record(
    state,
    kappa,
    weight,
    triples=((0, 1, 2),),
    dissipation_residual=np.nan,
    with_lemma43=None,
):
    """Evaluate all monitors on a snapshot; the Theta(N^3) monitor is skipped
    for N > 64 unless explicitly requested."""
    if with_lemma43 is None:
        with_lemma43 = state.N <= LEMMA43_MAX_N
    dets = tuple(
        coplanarity_det(state, *tri) for tri in triples if state.d == 2 and max(tri) < state.N
    )
    smin, smax, _, _ = speed_consensus(state)
    return DiagRecord(
        t=state.t,
        energy=energy(state),
        max_misalign=max_misalignment(state),
        max_dist=max_distance(state),
        constraint_drift=state.constraint_drift(),
        coplanarity=dets,
        lemma41_max=lemma41_max(state),
        lemma43_residual=lemma43_residual(state) if with_lemma43 else np.nan,
        dissipation_residual=dissipation_residual,
        speed_min=smin,
        speed_max=smax,
    )

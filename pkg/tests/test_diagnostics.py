import math

import numpy as np
import pytest

import hypflock as hf
from hypflock import diagnostics
from hypflock.verify import _random_state

APEX = np.array([1.0, 0.0, 0.0])


def test_energy_values():
    x = np.stack([APEX, APEX])
    v = np.array([[0.0, 3.0, 4.0], [0.0, 0.0, 1.0]])
    state = hf.FlockState(0.0, x, v)
    assert hf.energy(state) == pytest.approx(13.0)
    assert hf.energy(hf.FlockState(0.0, x, np.zeros_like(v))) == 0.0


def test_misalignment_two_routes(rng):
    state = _random_state(rng, 5)
    for i in range(state.N):
        for j in range(state.N):
            if i == j:
                continue
            closed = diagnostics.misalignment(state, i, j)
            explicit = diagnostics.misalignment_explicit(state, i, j)
            assert closed == pytest.approx(explicit, abs=1e-10)


def test_misalignment_vanishes_on_aligned_pair():
    # v2 is the parallel transport of v1, so the pair is perfectly aligned
    x1 = APEX
    x2 = np.array([math.cosh(1), math.sinh(1), 0.0])
    v1 = np.array([0.0, 0.5, 0.5])
    v2 = hf.parallel_transport(x1, x2, v1)
    state = hf.FlockState(0.0, np.stack([x1, x2]), np.stack([v1, v2]))
    assert diagnostics.misalignment(state, 1, 0) < 1e-12
    assert diagnostics.misalignment(state, 0, 1) < 1e-12


def test_max_distance(rng):
    state = _random_state(rng, 6)
    expected = max(
        float(hf.distance(state.x[i], state.x[j]))
        for i in range(6)
        for j in range(6)
    )
    assert diagnostics.max_distance(state) == pytest.approx(expected, abs=1e-12)


def test_coplanarity_det():
    x = np.stack(
        [
            APEX,
            np.array([math.cosh(1), math.sinh(1), 0.0]),
            np.array([math.cosh(1), 0.0, math.sinh(1)]),
        ]
    )
    state = hf.FlockState(0.0, x, np.zeros_like(x))
    assert hf.coplanarity_det(state, 0, 1, 2) == pytest.approx(math.sinh(1) ** 2)
    # all on one geodesic: determinant vanishes
    x2 = np.stack([APEX, x[1], np.array([math.cosh(2), math.sinh(2), 0.0])])
    state2 = hf.FlockState(0.0, x2, np.zeros_like(x2))
    assert abs(hf.coplanarity_det(state2, 0, 1, 2)) < 1e-12


def test_coplanarity_requires_d2():
    x = np.stack([np.array([1.0, 0.0, 0.0, 0.0])] * 3)
    state = hf.FlockState(0.0, x, np.zeros_like(x))
    with pytest.raises(ValueError):
        hf.coplanarity_det(state, 0, 1, 2)


def test_pair_bound_holds(rng):
    for _ in range(200):
        state = _random_state(rng, 2, vel_scale=3.0)
        assert hf.lemma41_max(state) <= 1e-12


def test_triple_bound_holds(rng):
    for _ in range(50):
        state = _random_state(rng, int(rng.integers(3, 8)))
        assert hf.lemma43_residual(state) >= -1e-12


def test_dissipation_rate_sign_and_constant_weight(rng):
    state = _random_state(rng, 4)
    rate = diagnostics.dissipation_rate(state, 1.0, hf.CommWeight.constant(1.0))
    assert rate <= 0.0
    m = diagnostics.misalignment_matrix(state)
    assert rate == pytest.approx(-np.sum(m * m) / (2.0 * state.N), abs=1e-12)


def test_speed_consensus_bounds(rng):
    state = _random_state(rng, 6)
    smin, smax, s1, s2 = hf.speed_consensus(state)
    assert 0.0 <= smin <= smax
    # every speed is bounded by sqrt(2 E)
    assert smax <= math.sqrt(2.0 * hf.energy(state)) + 1e-12
    assert s2 == pytest.approx(math.sqrt(2.0) * s1, abs=1e-15)


def test_compute_record_fields(rng):
    state = _random_state(rng, 4)
    rec = hf.compute_record(state, 1.0, hf.CommWeight.constant(1.0))
    assert rec.t == state.t
    assert rec.energy == pytest.approx(hf.energy(state))
    assert len(rec.coplanarity) == 1
    assert rec.log10_energy == pytest.approx(math.log10(rec.energy))
    assert np.isnan(rec.dissipation_residual)


def test_compute_record_skips_cubic_monitor_for_large_n(rng):
    state = _random_state(rng, 4)
    rec = hf.compute_record(state, 1.0, hf.CommWeight.constant(1.0), with_lemma43=False)
    assert np.isnan(rec.lemma43_residual)


def test_log10_energy_of_rest_state():
    x = np.stack([APEX, APEX])
    state = hf.FlockState(0.0, x, np.zeros_like(x))
    rec = hf.compute_record(state, 1.0, hf.CommWeight.constant(1.0))
    assert rec.log10_energy == -np.inf

import math

import numpy as np
import pytest

import hypflock as hf
from hypflock import dynamics
from hypflock.geometry import chart_geodesic_oracle_energy
from hypflock.verify import random_point, random_unit_tangent

APEX = np.array([1.0, 0.0, 0.0])
E1 = np.array([0.0, 1.0, 0.0])


def test_geodesic_eval_at_zero():
    point, vel = hf.geodesic_eval(APEX, E1, 0.0)
    assert np.allclose(point, APEX)
    assert np.allclose(vel, E1)


def test_geodesic_eval_unit_arclength():
    point, vel = hf.geodesic_eval(APEX, E1, 1.0)
    assert np.allclose(point, [math.cosh(1), math.sinh(1), 0.0])
    assert np.allclose(vel, [math.sinh(1), math.cosh(1), 0.0])


def test_geodesic_stays_on_hyperboloid(rng):
    x = random_point(rng)
    v = random_unit_tangent(rng, x)
    for s in np.linspace(-10, 10, 41):
        point, vel = hf.geodesic_eval(x, v, s)
        assert abs(hf.minkowski_inner(point, point) + 1.0) < 1e-12 * max(1.0, point[0] ** 2)
        assert abs(hf.minkowski_inner(point, vel)) < 1e-12 * max(1.0, point[0] ** 2)


def test_geodesic_matches_chart_oracle():
    point, _ = hf.geodesic_eval(APEX, E1, 0.7)
    u = hf.chart_geodesic_oracle([0.0, 0.0], [1.0, 0.0], 0.7)
    assert np.max(np.abs(u - hf.to_chart(point))) < 1e-6


def test_chart_oracle_stationary():
    u = hf.chart_geodesic_oracle([0.4, -0.3], [0.0, 0.0], 2.0)
    assert np.allclose(u, [0.4, -0.3])


def test_chart_oracle_first_integral():
    vals = chart_geodesic_oracle_energy([0.0, 0.0], [1.0, 0.0], 1.0)
    assert np.max(np.abs(vals - vals[0])) < 1e-8


def test_distance_values():
    p = APEX
    q = np.array([math.cosh(2), math.sinh(2), 0.0])
    assert hf.distance(p, p) == 0.0
    assert hf.distance(p, q) == pytest.approx(2.0, abs=1e-14)
    assert hf.distance(q, p) == hf.distance(p, q)


def test_log_map_conventions():
    q = np.array([math.cosh(1), math.sinh(1), 0.0])
    assert np.allclose(hf.log_map(APEX, APEX), 0.0)
    assert np.allclose(hf.log_map(APEX, q), E1, atol=1e-14)


def test_distance_log_consistency():
    p = hf.from_chart([0.3, -0.2])
    q = hf.from_chart([1.1, 0.8])
    assert hf.tangent_norm(hf.log_map(p, q)) == pytest.approx(
        float(hf.distance(p, q)), abs=1e-12
    )


def test_exp_log_round_trip(rng):
    for _ in range(1000):
        p = random_point(rng)
        q = random_point(rng)
        lg = hf.log_map(p, q)
        s = float(hf.tangent_norm(lg))
        if s == 0.0:
            continue
        point, _ = hf.geodesic_eval(p, lg / s, s)
        assert np.max(np.abs(point - q)) < 1e-10


def test_parallel_transport_identity_and_example():
    q = np.array([math.cosh(1), math.sinh(1), 0.0])
    v = np.array([0.0, 1.0, 0.0])
    assert np.allclose(hf.parallel_transport(APEX, APEX, v), v)
    # the geodesic's own velocity transports to itself
    moved = hf.parallel_transport(APEX, q, v)
    assert np.allclose(moved, [math.sinh(1), math.cosh(1), 0.0], atol=1e-14)


def test_transport_isometry_and_inverse(rng):
    for _ in range(200):
        p = random_point(rng)
        q = random_point(rng)
        v = hf.project_tangent(p, rng.standard_normal(3))
        w = hf.project_tangent(p, rng.standard_normal(3))
        pv = hf.parallel_transport(p, q, v)
        pw = hf.parallel_transport(p, q, w)
        assert abs(hf.minkowski_inner(q, pv)) < 1e-12
        assert float(hf.tangent_norm(pv)) == pytest.approx(
            float(hf.tangent_norm(v)), abs=1e-12
        )
        # inner products are preserved, round trips invert
        assert hf.minkowski_inner(pv, pw) == pytest.approx(
            float(hf.minkowski_inner(v, w)), abs=1e-12
        )
        back = hf.parallel_transport(q, p, pv)
        assert np.max(np.abs(back - v)) < 1e-10


def test_transport_matches_ode_oracle(rng):
    worst = 0.0
    for _ in range(50):
        p = random_point(rng)
        q = random_point(rng)
        v = random_unit_tangent(rng, p)
        closed = hf.parallel_transport(p, q, v)
        oracle = hf.transport_ode_oracle(p, q, v)
        worst = max(worst, float(np.max(np.abs(closed - oracle))))
    assert worst < 1e-8


def test_transport_oracle_identity():
    v = np.array([0.0, 0.3, -0.2])
    assert np.allclose(hf.transport_ode_oracle(APEX, APEX, v), v)


def test_covariant_accel_examples():
    # geodesic curves satisfy xdd = x, so the intrinsic acceleration is zero
    x = np.array([math.cosh(1), math.sinh(1), 0.0])
    v = np.array([math.sinh(1), math.cosh(1), 0.0])
    assert np.allclose(hf.covariant_accel(x, v, x), 0.0, atol=1e-15)
    out = hf.covariant_accel(APEX, E1, np.array([1.0, 0.0, 1.0]))
    assert np.allclose(out, [0.0, 0.0, 1.0])


def test_covariant_accel_matches_rhs_along_flow(rng):
    # finite-difference second derivative of a simulated trajectory equals
    # the coupling term of the equations of motion to O(dt^2)
    cfg = hf.SimConfig(
        N=3, d=2, kappa=1.0, weight=hf.CommWeight.constant(1.0),
        dt=1e-4, t_end=0.0, seed=11,
    )
    state = hf.initial_state(cfg)
    prev = dynamics._advance(state, cfg, 1, dt=-cfg.dt)
    nxt = hf.rk4_step(state, cfg)
    xdd = (nxt.x - 2.0 * state.x + prev.x) / cfg.dt**2
    accel = hf.covariant_accel(state.x, state.v, xdd)
    _, vdot = hf.hcs_rhs(state, cfg.kappa, cfg.weight)
    coupling = hf.covariant_accel(state.x, state.v, vdot)
    assert np.max(np.abs(accel - coupling)) < 1e-5


def test_geodesic_type_validation():
    with pytest.raises(ValueError):
        hf.Geodesic(APEX, 2.0 * E1)
    geo = hf.Geodesic(APEX, E1)
    point, _ = geo(1.0)
    assert np.allclose(point, [math.cosh(1), math.sinh(1), 0.0])

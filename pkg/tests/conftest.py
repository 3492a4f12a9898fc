import time

import numpy as np
import pytest

import hypflock as hf

FIG1_SEEDS = tuple(range(1, 21))


def fig1_config(seed, **overrides):
    """The headline experiment: constant weight, N=10, kappa=1, dt=1e-3, 200s."""
    kwargs = dict(
        N=10,
        d=2,
        kappa=1.0,
        weight=hf.CommWeight.constant(1.0),
        dt=1e-3,
        t_end=200.0,
        sample_every=100,
        seed=seed,
        initializer={"kind": "random_ball", "radius": 1.0, "vel_scale": 1.35},
    )
    kwargs.update(overrides)
    return hf.SimConfig(**kwargs)


@pytest.fixture(scope="session")
def fig1_runs():
    """Twenty seeded runs of the headline experiment, shared by the acceptance
    criteria that all quantify the same ensemble.  Each entry is
    (seed, records, wall_seconds)."""
    runs = []
    for seed in FIG1_SEEDS:
        records = []
        start = time.perf_counter()
        hf.simulate(fig1_config(seed), records.append)
        runs.append((seed, records, time.perf_counter() - start))
    return runs


@pytest.fixture
def rng():
    return np.random.default_rng(20200706)

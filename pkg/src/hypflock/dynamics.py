"""The hyperboloid Cucker-Smale system: right-hand side, projected RK4
integrator, simulation driver, the hyperbolic Kuramoto models, and the
geodesic-restriction reduction.
"""

import warnings
from dataclasses import dataclass, field

import numpy as np

from . import _kernels, diagnostics
from .geometry import geodesic_eval
from .minkowski import (
    EPS_CONSTRAINT,
    ConstraintError,
    ProjectionError,
    check_point,
    check_tangent,
    from_chart,
    minkowski_inner,
    point_residual,
    project_tangent,
    tangency_residual,
    x0_overflowing,
)

WEIGHT_KINDS = ("constant", "cs_kernel", "exp_kernel", "cosh_distance")
_KIND_CODES = {
    "constant": _kernels.KIND_CONSTANT,
    "cs_kernel": _kernels.KIND_CS,
    "exp_kernel": _kernels.KIND_EXP,
    "cosh_distance": _kernels.KIND_COSH,
}


class BlowUpError(ProjectionError):
    """The integrator lost timelikeness of a particle position."""


class ReductionError(ValueError):
    """State is not on the given geodesic to tolerance."""

    def __init__(self, message, residual):
        super().__init__(message)
        self.residual = residual


@dataclass(frozen=True)
class CommWeight:
    """Communication weight psi(x, y), symmetric and nonnegative.

    kinds: constant(c); cs_kernel(beta) with psi = (1 + d(x,y)^2)^(-beta);
    exp_kernel(lam) with psi = exp(-lam d(x,y)); cosh_distance with
    psi = -<x,y>_M = cosh d(x,y).  The last one is unbounded, which breaks
    the standing boundedness assumption; it is allowed (the geodesic
    reduction needs it) but flagged via `bounded`.
    """

    kind: str
    param: float = 1.0

    def __post_init__(self):
        if self.kind not in WEIGHT_KINDS:
            raise ValueError(f"unknown weight kind {self.kind!r}")
        if self.kind == "constant" and self.param < 0:
            raise ValueError("constant weight must be nonnegative")

    @classmethod
    def constant(cls, c=1.0):
        return cls("constant", float(c))

    @classmethod
    def cs_kernel(cls, beta):
        return cls("cs_kernel", float(beta))

    @classmethod
    def exp_kernel(cls, lam):
        return cls("exp_kernel", float(lam))

    @classmethod
    def cosh_distance(cls):
        return cls("cosh_distance", 0.0)

    @property
    def code(self):
        return _KIND_CODES[self.kind]

    @property
    def psi_max(self):
        if self.kind == "constant":
            return self.param
        if self.kind == "cosh_distance":
            return np.inf
        return 1.0

    @property
    def bounded(self):
        return self.kind != "cosh_distance"

    @property
    def psi_m(self):
        """Declared global positive lower bound (0 when none exists)."""
        if self.kind == "constant":
            return self.param
        if self.kind == "cosh_distance":
            return 1.0
        return 0.0

    def __call__(self, p, q):
        """Evaluate psi on points (arrays of shape (..., d+1))."""
        xx = minkowski_inner(p, q)
        if self.kind == "constant":
            return np.full(np.shape(xx), self.param) if np.ndim(xx) else self.param
        if self.kind == "cosh_distance":
            return -xx
        dist = np.arccosh(np.maximum(1.0, -xx))
        if self.kind == "cs_kernel":
            return (1.0 + dist * dist) ** (-self.param)
        return np.exp(-self.param * dist)

    def to_dict(self):
        return {"kind": self.kind, "param": self.param}

    @classmethod
    def from_dict(cls, d):
        return cls(d["kind"], float(d.get("param", 1.0)))


@dataclass
class FlockState:
    """Positions and velocities of N particles on the hyperboloid at time t."""

    t: float
    x: np.ndarray  # (N, d+1)
    v: np.ndarray  # (N, d+1)

    @property
    def N(self):
        return self.x.shape[0]

    @property
    def d(self):
        return self.x.shape[1] - 1

    def validate(self, eps=EPS_CONSTRAINT):
        check_point(self.x, eps)
        check_tangent(self.x, self.v, eps)
        return self

    def constraint_drift(self):
        return max(
            float(np.max(point_residual(self.x))),
            float(np.max(tangency_residual(self.x, self.v))),
        )

    def copy(self):
        return FlockState(self.t, self.x.copy(), self.v.copy())


@dataclass
class SimConfig:
    """Full description of one simulation run."""

    N: int = 10
    d: int = 2
    kappa: float = 1.0
    weight: CommWeight = field(default_factory=CommWeight.constant)
    dt: float = 1e-3
    t_end: float = 200.0
    sample_every: int = 100
    seed: int = 0
    initializer: dict = field(
        default_factory=lambda: {"kind": "random_ball", "radius": 1.0, "vel_scale": 1.0}
    )
    projection: bool = True

    def __post_init__(self):
        if self.kappa <= 0:
            raise ValueError("coupling strength must be strictly positive")
        if self.dt <= 0 or self.t_end < 0:
            raise ValueError("need dt > 0 and t_end >= 0")
        if self.sample_every < 1:
            raise ValueError("sample_every must be >= 1")

    def to_dict(self):
        return {
            "N": self.N,
            "d": self.d,
            "kappa": self.kappa,
            "weight": self.weight.to_dict(),
            "dt": self.dt,
            "t_end": self.t_end,
            "sample_every": self.sample_every,
            "seed": self.seed,
            "initializer": self.initializer,
            "projection": self.projection,
        }

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        if "weight" in d:
            d["weight"] = CommWeight.from_dict(d["weight"])
        return cls(**d)


def initial_state(cfg):
    """Build the seeded initial state described by cfg.initializer."""
    rng = np.random.default_rng(cfg.seed)
    init = cfg.initializer
    kind = init.get("kind", "random_ball")
    if kind == "random_ball":
        radius = float(init.get("radius", 1.0))
        vel_scale = float(init.get("vel_scale", 1.0))
        # chart-uniform ball: gaussian direction, radius ~ U^(1/d)
        direc = rng.standard_normal((cfg.N, cfg.d))
        direc /= np.linalg.norm(direc, axis=1, keepdims=True)
        r = radius * rng.random(cfg.N) ** (1.0 / cfg.d)
        x = from_chart(direc * r[:, None])
        v = project_tangent(x, vel_scale * rng.standard_normal((cfg.N, cfg.d + 1)))
    elif kind in ("geodesic", "geodesic_random"):
        p = np.asarray(init.get("p", [1.0] + [0.0] * cfg.d), dtype=float)
        q = np.asarray(
            init.get("q", [0.0, 1.0] + [0.0] * (cfg.d - 1)), dtype=float
        )
        if kind == "geodesic":
            alpha = np.asarray(init["alpha"], dtype=float)
            alpha_dot = np.asarray(init["alpha_dot"], dtype=float)
        else:
            radius = float(init.get("radius", 1.0))
            scale = float(init.get("alpha_dot_scale", 1.0))
            alpha = rng.uniform(-radius, radius, cfg.N)
            alpha_dot = scale * rng.standard_normal(cfg.N)
        x = np.cosh(alpha)[:, None] * p + np.sinh(alpha)[:, None] * q
        tangent = np.sinh(alpha)[:, None] * p + np.cosh(alpha)[:, None] * q
        v = alpha_dot[:, None] * tangent
    elif kind == "explicit":
        x = np.asarray(init["x"], dtype=float)
        v = np.asarray(init["v"], dtype=float)
    else:
        raise ValueError(f"unknown initializer kind {kind!r}")
    state = FlockState(0.0, x, v)
    state.validate()
    return state


def hcs_rhs(state, kappa, weight):
    """Right-hand side of the flocking system: returns (xdot, vdot).

    vdot_i = ||v_i||^2 x_i
             + (kappa/N) sum_j psi_ij (v_j - v_i
                                       + <x_i,v_j>/(1-<x_i,x_j>) (x_i+x_j)).
    The j = i term vanishes identically and is kept without special-casing.
    """
    if state.constraint_drift() > 1e3 * EPS_CONSTRAINT:
        raise ConstraintError(
            f"state corrupted: constraint drift {state.constraint_drift()}"
        )
    ax = np.empty_like(state.x)
    av = np.empty_like(state.v)
    _kernels.hcs_rhs_kernel(
        state.x, state.v, float(kappa), weight.code, float(weight.param), ax, av
    )
    return ax, av


def _advance(state, cfg, nsteps, dt=None):
    dt = cfg.dt if dt is None else dt
    x, v, status = _kernels.integrate_kernel(
        state.x,
        state.v,
        nsteps,
        float(dt),
        float(cfg.kappa),
        cfg.weight.code,
        float(cfg.weight.param),
        cfg.projection,
    )
    if status >= 0:
        raise BlowUpError(
            f"particle {status} lost timelikeness at t ~ {state.t}",
            particle=status,
            time=state.t,
        )
    if not np.all(np.isfinite(x)) or not np.all(np.isfinite(v)):
        raise BlowUpError("non-finite state", time=state.t)
    return FlockState(state.t + nsteps * dt, x, v)


def rk4_step(state, cfg):
    """One projected RK4 step of size cfg.dt."""
    return _advance(state, cfg, 1)


def dissipation_residual(state, cfg):
    """|centered-difference dE/dt - closed-form dissipation| at this state.

    The centered difference uses one forward and one backward integrator
    step, so it carries the O(dt^2) finite-difference error.
    """
    fwd = _advance(state, cfg, 1)
    bwd = _advance(state, cfg, 1, dt=-cfg.dt)
    dEdt = (diagnostics.energy(fwd) - diagnostics.energy(bwd)) / (2.0 * cfg.dt)
    return abs(dEdt - diagnostics.dissipation_rate(state, cfg.kappa, cfg.weight))


def _emit(sink, state, cfg, warned):
    if sink is None:
        return warned
    if not warned and x0_overflowing(state.x):
        warnings.warn(
            "x^0 exceeds 1e8; Minkowski products are losing accuracy",
            RuntimeWarning,
        )
        warned = True
    rec = diagnostics.compute_record(
        state,
        cfg.kappa,
        cfg.weight,
        dissipation_residual=dissipation_residual(state, cfg),
    )
    sink(rec)
    return warned


def simulate(cfg, sink=None):
    """Run the configured simulation, emitting a diagnostics record at step 0
    and every cfg.sample_every steps (plus the final step).  Returns the final
    state; integrator blow-up raises BlowUpError with run context.
    """
    state = initial_state(cfg)
    warned = _emit(sink, state, cfg, False)
    total = int(np.ceil(cfg.t_end / cfg.dt)) if cfg.t_end > 0 else 0
    done = 0
    while done < total:
        chunk = min(cfg.sample_every, total - done)
        state = _advance(state, cfg, chunk)
        done += chunk
        # keep t free of accumulated float error
        state.t = done * cfg.dt
        warned = _emit(sink, state, cfg, warned)
    return state


# ---------------------------------------------------------------------------
# Hyperbolic Kuramoto models and the geodesic reduction.
# ---------------------------------------------------------------------------


def hk_rhs_first_order(alpha, omega, kappa):
    """Rates omega_i + (kappa/N) sum_j sinh(alpha_j - alpha_i)."""
    alpha = np.asarray(alpha, dtype=float)
    omega = np.asarray(omega, dtype=float)
    out = np.empty_like(alpha)
    _kernels.hk_first_rhs_kernel(alpha, omega, float(kappa), out)
    if not np.all(np.isfinite(out)):
        raise OverflowError("sinh overflow in hyperbolic Kuramoto rates")
    return out


def hk_rhs_second_order(alpha, alphadot, kappa, weight=None):
    """Accelerations (kappa/N) sum_j psi_ij (alphadot_j - alphadot_i) with psi
    evaluated at the geodesic embedding of alpha."""
    weight = CommWeight.cosh_distance() if weight is None else weight
    alpha = np.asarray(alpha, dtype=float)
    alphadot = np.asarray(alphadot, dtype=float)
    out = np.empty_like(alpha)
    _kernels.hk_second_rhs_kernel(
        alpha, alphadot, float(kappa), weight.code, float(weight.param), out
    )
    if not np.all(np.isfinite(out)):
        raise OverflowError("overflow in hyperbolic Kuramoto accelerations")
    return out


def simulate_hk_first(alpha0, omega, kappa, dt, t_end, sample_every=100):
    """RK4 for the first-order model; returns (times, alpha trajectory)."""
    alpha = np.asarray(alpha0, dtype=float).copy()
    omega = np.asarray(omega, dtype=float)
    total = int(np.ceil(t_end / dt)) if t_end > 0 else 0
    times = [0.0]
    traj = [alpha.copy()]
    done = 0
    while done < total:
        chunk = min(sample_every, total - done)
        alpha = _kernels.hk_first_integrate(alpha, omega, float(kappa), chunk, float(dt))
        done += chunk
        times.append(done * dt)
        traj.append(alpha.copy())
    return np.array(times), np.array(traj)


def simulate_hk_second(alpha0, alphadot0, kappa, dt, t_end, weight=None, sample_every=100):
    """RK4 for the second-order geodesic system; returns (times, alpha, alphadot)."""
    weight = CommWeight.cosh_distance() if weight is None else weight
    alpha = np.asarray(alpha0, dtype=float).copy()
    alphadot = np.asarray(alphadot0, dtype=float).copy()
    total = int(np.ceil(t_end / dt)) if t_end > 0 else 0
    times = [0.0]
    atraj = [alpha.copy()]
    adtraj = [alphadot.copy()]
    done = 0
    while done < total:
        chunk = min(sample_every, total - done)
        alpha, alphadot = _kernels.hk_second_integrate(
            alpha, alphadot, float(kappa), weight.code, float(weight.param), chunk, float(dt)
        )
        done += chunk
        times.append(done * dt)
        atraj.append(alpha.copy())
        adtraj.append(alphadot.copy())
    return np.array(times), np.array(atraj), np.array(adtraj)


def hk_matched_frequencies(alpha0, alphadot0, kappa):
    """Natural frequencies making the first-order model match the geodesic
    flocking flow: omega_i = alphadot_i(0) - (kappa/N) sum_j sinh(a_j - a_i)."""
    alpha0 = np.asarray(alpha0, dtype=float)
    alphadot0 = np.asarray(alphadot0, dtype=float)
    N = alpha0.shape[0]
    coupling = np.sum(np.sinh(alpha0[None, :] - alpha0[:, None]), axis=1)
    return alphadot0 - kappa / N * coupling


def geodesic_residual(state, geo):
    """Max off-geodesic residual of positions and velocities."""
    p, q = geo.start, geo.direction
    alpha = np.arcsinh(minkowski_inner(state.x, q))
    xs = np.cosh(alpha)[:, None] * p + np.sinh(alpha)[:, None] * q
    tangent = np.sinh(alpha)[:, None] * p + np.cosh(alpha)[:, None] * q
    alphadot = minkowski_inner(state.v, tangent)
    vres = state.v - alphadot[:, None] * tangent
    return float(max(np.max(np.abs(state.x - xs)), np.max(np.abs(vres))))


def reduce_to_geodesic(state, geo, tol=1e-8):
    """Recover (alpha, alphadot) for a state lying on the geodesic.

    alpha_i = arcsinh(<x_i, q>_M) and alphadot_i is the component of v_i
    along the geodesic velocity.  Raises ReductionError with the maximum
    residual when the state is off the geodesic beyond tol.
    """
    res = geodesic_residual(state, geo)
    if res > tol:
        raise ReductionError(f"state is off the geodesic (residual {res})", res)
    p, q = geo.start, geo.direction
    alpha = np.arcsinh(minkowski_inner(state.x, q))
    tangent = np.sinh(alpha)[:, None] * p + np.cosh(alpha)[:, None] * q
    alphadot = minkowski_inner(state.v, tangent)
    return alpha, alphadot


def geodesic_state(geo, alpha, alpha_dot, t=0.0):
    """Embed hyperbolic angles and rates as a flock state on the geodesic."""
    alpha = np.asarray(alpha, dtype=float)
    alpha_dot = np.asarray(alpha_dot, dtype=float)
    x, tangent = geodesic_eval(geo.start, geo.direction, alpha[:, None])
    return FlockState(t, x, alpha_dot[:, None] * tangent)

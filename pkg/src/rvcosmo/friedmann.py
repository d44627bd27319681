"""Matter+Lambda Friedmann background integration.

The reduced first Friedmann equation for a pressureless universe with
cosmological constant has constant coefficients:

    adot^2 / H0^2 = 1 + Omega0*(1/a - 1) + OmegaLambda0*(a^2 - 1)

``integrate`` solves it on the expanding branch with cosmic-time
calibration t(a) = int_0^a da'/adot(a'), so that the CPT identity
H(t)*t = F(Omega(t)) is directly checkable along flat trajectories.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.integrate import solve_ivp

from .cpt import Curvature, f_omega
from .errors import DomainError, StepFailure, TurningPoint
from .sampled import SampledFunction, write_csv

DEFAULT_A_INIT = 1e-6
DEFAULT_A_FINAL = 1e3
DEFAULT_N_POINTS = 4096
DEFAULT_RTOL = 1e-12

TRAJECTORY_HEADER = ("t", "a", "a_dot", "H", "Omega", "OmegaLambda", "OmegaK", "q")


@dataclass(frozen=True)
class CosmologyConfig:
    """Matter+Lambda model constants (c = 1, G absorbed into Omega0)."""

    H0: float
    Omega0: float
    OmegaLambda0: float
    k: Curvature = Curvature.FLAT

    def __post_init__(self):
        if self.H0 <= 0:
            raise DomainError("H0 must be positive")
        if self.Omega0 < 0:
            raise DomainError("Omega0 must be nonnegative")
        ok0 = self.OmegaK0
        if self.k is Curvature.FLAT and abs(ok0) >= 1e-12:
            raise DomainError(f"flat model needs Omega0 + OmegaLambda0 = 1; OmegaK0 = {ok0:g}")
        if self.k is Curvature.OPEN and not ok0 > 0:
            raise DomainError("open model needs OmegaK0 > 0")
        if self.k is Curvature.CLOSED and not ok0 < 0:
            raise DomainError("closed model needs OmegaK0 < 0")

    @property
    def OmegaK0(self) -> float:
        return 1.0 - self.Omega0 - self.OmegaLambda0

    @property
    def Lambda(self) -> float:
        return 3.0 * self.OmegaLambda0 * self.H0 ** 2

    @classmethod
    def from_json(cls, path) -> "CosmologyConfig":
        with open(path) as fh:
            doc = json.load(fh)
        return cls(
            H0=float(doc["H0"]),
            Omega0=float(doc["Omega0"]),
            OmegaLambda0=float(doc["OmegaLambda0"]),
            k=Curvature.from_name(doc.get("k", "flat")),
        )


def _bracket(a, cfg: CosmologyConfig):
    a = np.asarray(a, dtype=float)
    return 1.0 + cfg.Omega0 * (1.0 / a - 1.0) + cfg.OmegaLambda0 * (a * a - 1.0)


def rhs_reduced(a, cfg: CosmologyConfig):
    """Expanding-branch adot at scale factor a; raises TurningPoint if the model recollapses."""
    expr = _bracket(a, cfg)
    if np.any(np.asarray(a) <= 0):
        raise DomainError("a must be positive")
    if np.any(expr < 0):
        raise TurningPoint("reduced Friedmann RHS negative: turning point reached")
    return cfg.H0 * np.sqrt(expr)


@dataclass(frozen=True)
class Trajectory:
    t: np.ndarray
    a: np.ndarray
    a_dot: np.ndarray
    H: np.ndarray
    Omega: np.ndarray
    OmegaLambda: np.ndarray
    OmegaK: np.ndarray
    q: np.ndarray

    def __post_init__(self):
        for name in TRAJECTORY_HEADER:
            arr = np.asarray(getattr(self, name), dtype=float).copy()
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if np.any(np.diff(self.t) <= 0):
            raise ValueError("trajectory times must be strictly increasing")
        if np.any(self.a <= 0):
            raise ValueError("scale factor must stay positive")

    def validate(self) -> None:
        """Row-wise self-consistency: H = adot/a, sum rule, q relation."""
        assert np.all(np.abs(self.H * self.a - self.a_dot) <= 1e-12 * np.abs(self.a_dot))
        assert np.all(np.abs(self.Omega + self.OmegaLambda + self.OmegaK - 1.0) <= 1e-10)
        assert np.all(np.abs(self.q - (self.Omega / 2.0 - self.OmegaLambda)) <= 1e-8)

    def a_track(self) -> SampledFunction:
        return SampledFunction(self.t, self.a)

    def to_csv(self, path) -> None:
        write_csv(path, TRAJECTORY_HEADER, [getattr(self, n) for n in TRAJECTORY_HEADER])


def time_since_bang(a: float, cfg: CosmologyConfig, n_nodes: int = 96) -> float:
    """t(a) = int_0^a da'/adot(a') with the a = s^2 substitution.

    The substitution removes the ~a^(-1/2) singularity of the integrand at
    a = 0; fixed-order Gauss-Legendre then converges fast.
    """
    s_max = np.sqrt(a)
    nodes, weights = leggauss(n_nodes)
    total = 0.0
    # Two panels: the mapping is smooth but a short second panel tightens
    # the tail where Lambda/curvature terms turn on.
    edges = [0.0, 0.5 * s_max, s_max]
    for lo, hi in zip(edges[:-1], edges[1:]):
        s = 0.5 * (hi - lo) * nodes + 0.5 * (hi + lo)
        integrand = 2.0 * s / rhs_reduced(s * s, cfg)
        total += 0.5 * (hi - lo) * float(np.dot(weights, integrand))
    return total


def integrate(
    cfg: CosmologyConfig,
    a_init: float = DEFAULT_A_INIT,
    a_final: float = DEFAULT_A_FINAL,
    n_points: int = DEFAULT_N_POINTS,
    rtol: float = DEFAULT_RTOL,
) -> Trajectory:
    """Integrate the expanding branch from a_init to a_final.

    Output is resampled to n_points log-uniform in cosmic time t.
    """
    if not 0 < a_init < a_final:
        raise DomainError("need 0 < a_init < a_final")
    # Check the bracket up front so recollapse reports cleanly.
    probe = np.geomspace(a_init, a_final, 256)
    rhs_reduced(probe, cfg)

    t_init = time_since_bang(a_init, cfg)

    def rhs(t, y):
        return [rhs_reduced(float(y[0]), cfg)]

    def reached_final(t, y):
        return y[0] - a_final

    reached_final.terminal = True
    reached_final.direction = 1.0

    # Coarse upper bound on the run time: matter-era crossing plus a
    # generous number of late e-folds.
    t_max = t_init + 1e3 * max(time_since_bang(a_final, cfg), 1.0 / cfg.H0)
    sol = solve_ivp(
        rhs,
        (t_init, t_max),
        [a_init],
        method="DOP853",
        rtol=rtol,
        atol=a_init * 1e-14,
        events=reached_final,
        dense_output=True,
    )
    if not sol.success or len(sol.t_events[0]) == 0:
        raise StepFailure(f"integration failed: {sol.message}")
    t_final = float(sol.t_events[0][0])

    t = np.geomspace(t_init, t_final, n_points)
    t[0], t[-1] = t_init, t_final
    a = sol.sol(t)[0]
    a = np.clip(a, None, a_final)  # event overshoot is O(rtol)

    a_dot = rhs_reduced(a, cfg)
    H = a_dot / a
    H2 = H * H
    Omega = cfg.Omega0 * cfg.H0 ** 2 / (a ** 3 * H2)
    OmegaLambda = cfg.OmegaLambda0 * cfg.H0 ** 2 / H2
    OmegaK = cfg.OmegaK0 * cfg.H0 ** 2 / (a * a * H2)
    q = Omega / 2.0 - OmegaLambda
    traj = Trajectory(t, a, a_dot, H, Omega, OmegaLambda, OmegaK, q)
    traj.validate()
    return traj


def residual_check(traj: Trajectory, cfg: CosmologyConfig) -> float:
    """Max row residual of the reduced first Friedmann equation, in units of H0^2."""
    lhs = traj.a_dot ** 2
    rhs = cfg.H0 ** 2 * _bracket(traj.a, cfg)
    return float(np.max(np.abs(lhs - rhs)) / cfg.H0 ** 2)


def cpt_identity_residual(traj: Trajectory, k: Curvature = Curvature.FLAT) -> float:
    """Max row residual of the CPT identity H(t)*t = F(Omega(t)).

    Omega values that round onto the endpoint 1 (deep matter era) are
    evaluated at the continuous limit F -> 2/3.
    """
    om = np.asarray(traj.Omega)
    if np.any(om <= 0.0) or np.any(om > 1.0 + 1e-12):
        raise DomainError("Omega left (0, 1] along the trajectory")
    om = np.clip(om, None, 1.0 - 1e-16)
    F = f_omega(om, k)
    return float(np.max(np.abs(traj.H * traj.t - F)))

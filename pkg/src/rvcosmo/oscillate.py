"""Two-power oscillation model a(t) = t^alpha cos^2 u + t^beta sin^2 u.

The phase u(t) interpolates the scale factor between the bounding powers
t^alpha and t^beta, producing extended-regularly-varying (ER) growth that
is not regularly varying: the track visits neighborhoods of both powers
infinitely often.  This module synthesizes such tracks, recovers u from a
bounded track, differentiates analytically, counts inflections, and
evaluates the divergent-regime age function F(Omega) = beta + 2t*udot*cot u.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import BoundViolation, DegenerateBounds, MissingDerivatives
from .sampled import GridSeries, SampledFunction

# Below this |sin u| the cotangent blows up and F(Omega) is evaluated on
# the alpha branch (growth locked to the lower power).
BRANCH_THRESHOLD = 1e-4
# (t/t0)^(alpha-beta) below this is treated as the large-t regime where the
# two-term F(Omega) display applies.
LARGE_T_RATIO = 1e-6
FIT_SLACK = 1e-12


@dataclass(frozen=True)
class OscillationModel:
    """Exponent pair alpha < beta and a differentiable phase u(t)."""

    alpha: float
    beta: float
    u: Callable[[np.ndarray], np.ndarray]
    u_dot: Callable[[np.ndarray], np.ndarray] | None = None
    u_ddot: Callable[[np.ndarray], np.ndarray] | None = None
    t0: float = 1.0

    def __post_init__(self):
        if not self.alpha < self.beta:
            raise ValueError("need alpha < beta strictly")
        if self.t0 <= 0:
            raise ValueError("t0 must be positive")


def log_phase_model(alpha: float, beta: float) -> OscillationModel:
    """Model with the logarithmic phase u = ln t."""
    return OscillationModel(
        alpha=alpha,
        beta=beta,
        u=np.log,
        u_dot=lambda t: 1.0 / np.asarray(t, dtype=float),
        u_ddot=lambda t: -1.0 / np.asarray(t, dtype=float) ** 2,
    )


def linear_phase_model(alpha: float, beta: float, omega: float) -> OscillationModel:
    """Model with the linear phase u = omega * t."""
    return OscillationModel(
        alpha=alpha,
        beta=beta,
        u=lambda t: omega * np.asarray(t, dtype=float),
        u_dot=lambda t: omega * np.ones_like(np.asarray(t, dtype=float)),
        u_ddot=lambda t: np.zeros_like(np.asarray(t, dtype=float)),
    )


def log_phase_grid(t_min: float, t_max: float, n: int) -> np.ndarray:
    """Log-uniform grid augmented with the u = ln t phase extrema.

    The points t = exp(k*pi/2) are where the track touches the bounding
    powers; a plain log-uniform grid misses the increasingly narrow dips
    onto t^alpha at late times, so they are inserted explicitly (total
    point count stays n).
    """
    lo, hi = math.log(t_min), math.log(t_max)
    k_min = math.ceil(2.0 * lo / math.pi)
    k_max = math.floor(2.0 * hi / math.pi)
    phase = np.exp(np.arange(k_min, k_max + 1) * (math.pi / 2.0))
    base = np.geomspace(t_min, t_max, max(2, n - len(phase)))
    return np.unique(np.concatenate([base, phase]))


def fit_u(g: SampledFunction, h: SampledFunction, f: SampledFunction) -> GridSeries:
    """Recover the principal-branch phase u in [0, pi/2] from g <= f <= h.

    u = (1/2) arccos((h + g - 2f)/(h - g)); f = g gives u = 0 and f = h
    gives u = pi/2, so the result is a signed series (zeros allowed).
    """
    if not (np.array_equal(g.grid, h.grid) and np.array_equal(g.grid, f.grid)):
        raise ValueError("g, h, f must share one grid")
    width = h.values - g.values
    if np.any(width < 1e-300):
        raise DegenerateBounds("h - g collapsed below 1e-300")
    over = f.values - h.values
    under = g.values - f.values
    slack = FIT_SLACK * width
    if np.any(over > slack) or np.any(under > slack):
        worst = float(max(over.max(), under.max()))
        raise BoundViolation(f"f leaves [g, h] by {worst:.3g} (> 1e-12*(h-g))")
    ratio = (h.values + g.values - 2.0 * f.values) / width
    u = 0.5 * np.arccos(np.clip(ratio, -1.0, 1.0))
    return GridSeries(g.grid, u)


def _powers(model: OscillationModel, t: np.ndarray):
    x = np.asarray(t, dtype=float) / model.t0
    return x ** model.alpha, x ** model.beta


def synth_a(model: OscillationModel, grid) -> SampledFunction:
    """a(t) = (t/t0)^alpha cos^2 u + (t/t0)^beta sin^2 u on the grid."""
    grid = np.asarray(grid, dtype=float)
    pa, pb = _powers(model, grid)
    u = np.asarray(model.u(grid), dtype=float)
    c2, s2 = np.cos(u) ** 2, np.sin(u) ** 2
    return SampledFunction(grid, pa * c2 + pb * s2)


def synth_derivatives(model: OscillationModel, grid) -> tuple[GridSeries, GridSeries]:
    """Analytic (a_dot, a_ddot) of the synthesized track."""
    if model.u_dot is None or model.u_ddot is None:
        raise MissingDerivatives("model lacks u_dot and/or u_ddot")
    t = np.asarray(grid, dtype=float)
    al, be = model.alpha, model.beta
    pa, pb = _powers(model, t)
    u = np.asarray(model.u(t), dtype=float)
    du = np.asarray(model.u_dot(t), dtype=float)
    ddu = np.asarray(model.u_ddot(t), dtype=float)
    c2, s2 = np.cos(u) ** 2, np.sin(u) ** 2
    sin2u, cos2u = np.sin(2.0 * u), np.cos(2.0 * u)

    a_dot = (al / t) * pa * c2 + (be / t) * pb * s2 + (pb - pa) * du * sin2u
    a_ddot = (
        al * (al - 1.0) / t ** 2 * pa * c2
        + be * (be - 1.0) / t ** 2 * pb * s2
        + 2.0 * (be * pb - al * pa) / t * du * sin2u
        + (pb - pa) * (ddu * sin2u + 2.0 * du ** 2 * cos2u)
    )
    return GridSeries(t, a_dot), GridSeries(t, a_ddot)


def inflection_count(a_ddot: GridSeries) -> int:
    """Sign changes of a_ddot across the grid (exact zeros dropped first)."""
    v = a_ddot.values[a_ddot.values != 0.0]
    if len(v) < 2:
        return 0
    signs = np.sign(v)
    return int(np.sum(signs[1:] != signs[:-1]))


def f_omega_divergent(
    model: OscillationModel,
    t: float,
    branch_threshold: float = BRANCH_THRESHOLD,
) -> float:
    """Age function H(t)*t of the oscillation model at one time.

    Large-t two-branch form: alpha when the phase sits at a multiple of pi
    (|sin u| <= threshold), else beta + 2*t*udot*cot(u).  Before the
    lower-power term has decayed away, the exact ratio t*a_dot/a is used.
    """
    if model.u_dot is None:
        raise MissingDerivatives("model lacks u_dot")
    t = float(t)
    u = float(model.u(np.asarray(t)))
    sin_u = math.sin(u)
    if abs(sin_u) <= branch_threshold:
        return model.alpha
    du = float(model.u_dot(np.asarray(t)))
    if (t / model.t0) ** (model.alpha - model.beta) >= LARGE_T_RATIO:
        pa = (t / model.t0) ** model.alpha
        pb = (t / model.t0) ** model.beta
        c2, s2 = math.cos(u) ** 2, sin_u ** 2
        a = pa * c2 + pb * s2
        a_dot = (model.alpha / t) * pa * c2 + (model.beta / t) * pb * s2
        a_dot += (pb - pa) * du * math.sin(2.0 * u)
        return t * a_dot / a
    return model.beta + 2.0 * t * du * (math.cos(u) / sin_u)

"""The threshold functional M(mu), characteristic roots, and solution pairs.

M(mu) = lim_{x->inf} x * int_x^inf mu(t)/t^2 dt is estimated on a schedule
of truncation points x with a finite cutoff X = 100*x plus the
constant-tail model x*mu_bar/X (exact when mu tends to a constant).  The
limit value gates the asymptotics of  addot + mu(t)/t^2 * a = 0:  below
1/4 there are power-law (regularly varying) fundamental solutions with
exponents solving x^2 - x + Gamma = 0; above 1/4 the solutions oscillate.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad, trapezoid

from .errors import (
    ComplexRoots,
    CriticalGamma,
    IntegrationError,
    NotSlowlyVarying,
    SingularEos,
)
from .rvcore import rv_index
from .sampled import GridSeries, SampledFunction

CRITICAL_BAND = 1e-9
CONVERGENCE_TOL = 1e-5
TAIL_FACTOR = 100.0
DEFAULT_SCHEDULE = tuple(10.0 * 2.0 ** k for k in range(13))


class Regime(enum.Enum):
    REGULAR = "REGULAR"          # Gamma < 1/4
    CRITICAL = "CRITICAL"        # Gamma = 1/4 within the critical band
    OSCILLATORY = "OSCILLATORY"  # Gamma > 1/4
    DIVERGENT = "DIVERGENT"      # no limit


@dataclass(frozen=True)
class GammaResult:
    gamma: float
    converged: bool
    diagnostics: tuple
    roots: tuple[float, float] | None
    regime: Regime


@dataclass(frozen=True)
class EosParams:
    """Equation-of-state constant w with its exponent and threshold value."""

    w: float
    alpha: float
    gamma: float


def char_roots(gamma: float) -> tuple[float, float]:
    """Real roots (alpha <= beta) of x^2 - x + gamma = 0."""
    if gamma > 0.25:
        raise ComplexRoots(f"gamma = {gamma} > 1/4: roots are complex")
    disc = math.sqrt(max(0.0, 1.0 - 4.0 * gamma))
    alpha = 0.5 * (1.0 - disc)
    return alpha, 1.0 - alpha


def gamma_of_w(w: float) -> EosParams:
    """Gamma(w) = (2/9)(1+3w)/(1+w)^2 and alpha(w) = 2/(3(1+w))."""
    if w == -1.0:
        raise SingularEos("w = -1 (cosmological constant): alpha and Gamma undefined")
    alpha = 2.0 / (3.0 * (1.0 + w))
    gamma = (2.0 / 9.0) * (1.0 + 3.0 * w) / (1.0 + w) ** 2
    return EosParams(w=float(w), alpha=alpha, gamma=gamma)


def _tail_mean_callable(mu, X: float) -> float:
    ts = np.geomspace(X / 10.0, X, 129)
    vals = np.asarray([mu(t) for t in ts], dtype=float)
    return float(np.mean(vals))


def _estimate_callable(mu, x: float, X: float) -> float:
    integral, _ = quad(lambda t: mu(t) / (t * t), x, X, limit=800, epsabs=1e-14, epsrel=1e-12)
    if not np.isfinite(integral):
        raise IntegrationError("non-finite integral of mu/t^2")
    return x * integral + x * _tail_mean_callable(mu, X) / X


def _estimate_sampled(mu: GridSeries, x: float, X: float) -> float:
    tau = np.log(mu.grid)
    lo, hi = math.log(x), math.log(X)
    if lo < tau[0] - 1e-12 or hi > tau[-1] + 1e-12:
        raise IntegrationError("sampled mu does not cover [x, 100x]")
    inside = (tau > lo) & (tau < hi)
    ts = np.concatenate(([lo], tau[inside], [hi]))
    vals = np.interp(ts, tau, mu.values)
    if not np.all(np.isfinite(vals)):
        raise IntegrationError("non-finite mu samples")
    integral = trapezoid(vals * np.exp(-ts), ts)
    tail_mask = tau >= hi - math.log(10.0)
    tail_mask &= tau <= hi
    mu_bar = float(np.mean(mu.values[tail_mask])) if tail_mask.any() else float(vals[-1])
    return x * float(integral) + x * mu_bar / X


def m_functional(
    mu,
    x_schedule=DEFAULT_SCHEDULE,
    tol: float = CONVERGENCE_TOL,
    tail_factor: float = TAIL_FACTOR,
) -> GammaResult:
    """Estimate Gamma = M(mu) over a truncation schedule.

    mu may be a callable t -> mu(t) or a GridSeries/SampledFunction whose
    grid covers [x, 100x] for every scheduled x.  A non-existent limit is
    reported as regime DIVERGENT, not raised.
    """
    xs = np.asarray(list(x_schedule), dtype=float)
    if len(xs) < 4 or np.any(np.diff(xs) <= 0):
        raise ValueError("schedule needs >= 4 increasing points")
    if xs[-1] / xs[0] < 100.0:
        raise ValueError("schedule must span at least 2 decades")
    estimates = []
    for x in xs:
        X = tail_factor * x
        if callable(mu):
            estimates.append(_estimate_callable(mu, x, X))
        else:
            estimates.append(_estimate_sampled(mu, x, X))
    est = np.asarray(estimates)
    trailing = est[len(est) // 2:]
    diffs = np.diff(trailing)
    converged = bool(np.all(np.abs(diffs) < tol))
    amplitude = float(trailing.max() - trailing.min())
    oscillating = len(diffs) >= 2 and np.any(diffs[:-1] * diffs[1:] < 0)
    gamma = float(est[-1])
    if oscillating and amplitude > 10.0 * tol:
        regime = Regime.DIVERGENT
        roots = None
        converged = False
    elif abs(gamma - 0.25) <= CRITICAL_BAND:
        regime = Regime.CRITICAL
        roots = (0.5, 0.5)
    elif gamma > 0.25:
        regime = Regime.OSCILLATORY
        roots = None
    else:
        regime = Regime.REGULAR
        roots = char_roots(gamma)
    return GammaResult(
        gamma=gamma,
        converged=converged,
        diagnostics=tuple(float(e) for e in est),
        roots=roots,
        regime=regime,
    )


def fundamental_pair(
    gamma: float,
    L1: SampledFunction,
    sv_index_tol: float = 0.1,
) -> tuple[SampledFunction, SampledFunction]:
    """Howard-Maric fundamental pair y_i = t^{alpha_i} L_i for gamma < 1/4.

    L2 = 1/((1 - 2*alpha) * L1); the asymptotic relation is adopted as an
    exact construction, so the ODE residual is only asymptotic for
    non-constant L1.
    """
    if abs(gamma - 0.25) <= CRITICAL_BAND:
        raise CriticalGamma("gamma at the double root 1/4: L1, L2 are not fundamental")
    if gamma > 0.25:
        raise ComplexRoots(f"gamma = {gamma} > 1/4")
    idx = rv_index(L1)
    if abs(idx) > sv_index_tol:
        raise NotSlowlyVarying(f"L1 has index {idx:.3g}, expected ~0")
    alpha, beta = char_roots(gamma)
    t = L1.grid
    y1 = SampledFunction(t, t ** alpha * L1.values)
    L2 = 1.0 / ((1.0 - 2.0 * alpha) * L1.values)
    y2 = SampledFunction(t, t ** beta * L2)
    return y1, y2


def mu_lambda(mu: GridSeries, lambda_const: float) -> GridSeries:
    """Lambda-shifted coefficient mu_Lambda(t) = mu(t) - Lambda*t^2/3."""
    return GridSeries(mu.grid, mu.values - lambda_const * mu.grid ** 2 / 3.0)

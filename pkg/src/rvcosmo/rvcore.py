"""Regular-variation analysis of sampled positive functions.

Finite-data estimators for the scaling-ratio limits f*(lambda), f_*(lambda),
the power-law index, Matuszewska-type index intervals, RV/ER classification,
the Karamata slowly-varying representation, and strip-visit counting.

All limit estimators work on a trailing tail window (default: the trailing
half of the usable points) with a second, shorter window used as a
convergence check; the limits live at infinity and two-window agreement is
the finite-data proxy.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_trapezoid

from .errors import (
    DifferentiationUnstable,
    GridTooShort,
    NonPositive,
    NotPowerLike,
)
from .sampled import GridSeries, SampledFunction

DEFAULT_TAIL_FRACTION = 0.5
CHECK_TAIL_FRACTION = 0.25
DEFAULT_PROBES = (2.0, 4.0, 8.0)
RV_TOLERANCE = 1e-3
SLOPE_AGREEMENT_TOL = 0.05
# Gap between the two window slopes beyond which the growth is treated as
# super-power-law (f*(lambda) diverging).
UNBOUNDED_SLOPE_GAP = 0.5
MIN_RATIO_POINTS = 64
MIN_DECADES = 3.0


class RvKind(enum.Enum):
    RV = "RV"
    ER = "ER"
    OR = "OR"
    UNBOUNDED = "UNBOUNDED"


@dataclass(frozen=True)
class RatioBounds:
    """Tail-window estimates of f*(lambda) (upper) and f_*(lambda) (lower)."""

    lam: float
    upper: float
    lower: float


@dataclass(frozen=True)
class RvClassification:
    kind: RvKind
    index: float | None = None
    index_interval: tuple[float, float] | None = None


@dataclass(frozen=True)
class SlowVaryRep:
    """Karamata representation data: L(t) ~ h0 * exp(int epsilon(s)/s ds)."""

    h0: float
    epsilon: GridSeries


def _require_span(f: SampledFunction, decades: float = MIN_DECADES) -> None:
    span = np.log10(f.grid[-1] / f.grid[0])
    if span < decades:
        raise GridTooShort(f"grid spans {span:.2f} decades, need >= {decades}")


def _tail_slice(n: int, fraction: float) -> slice:
    start = n - max(2, int(round(n * fraction)))
    return slice(max(0, start), n)


def ratio_bounds(
    f: SampledFunction,
    lam: float,
    tail_fraction: float = DEFAULT_TAIL_FRACTION,
) -> RatioBounds:
    """Estimate f*(lambda) and f_*(lambda) from the trailing tail window.

    f is interpolated at lambda*t geometrically (log-linear in log t).
    """
    if lam <= 1.0:
        raise ValueError("lambda must be > 1")
    _require_span(f)
    if np.any(f.values <= 0):
        raise NonPositive("ratio_bounds needs strictly positive values")
    tau = f.log_grid
    logf = f.log_values
    shift = np.log(lam)
    valid = tau + shift <= tau[-1] + 1e-12
    n_valid = int(valid.sum())
    if n_valid < MIN_RATIO_POINTS:
        raise GridTooShort(f"only {n_valid} valid ratio points, need >= {MIN_RATIO_POINTS}")
    logf_lam = np.interp(tau[valid] + shift, tau, logf)
    log_ratio = logf_lam - logf[valid]
    tail = log_ratio[_tail_slice(n_valid, tail_fraction)]
    return RatioBounds(lam=lam, upper=float(np.exp(tail.max())), lower=float(np.exp(tail.min())))


def _slope(f: SampledFunction, tail_fraction: float) -> tuple[float, float]:
    """Least-squares slope of log f vs log t on a trailing window; returns (slope, rms residual)."""
    tau = f.log_grid
    logf = f.log_values
    sl = _tail_slice(len(f), tail_fraction)
    coef, res = np.polyfit(tau[sl], logf[sl], 1), None
    fit = np.polyval(coef, tau[sl])
    res = float(np.sqrt(np.mean((logf[sl] - fit) ** 2)))
    return float(coef[0]), res


def rv_index(
    f: SampledFunction,
    tail_fraction: float = DEFAULT_TAIL_FRACTION,
    agreement_tol: float = SLOPE_AGREEMENT_TOL,
) -> float:
    """Power-law index estimate: trailing-window log-log slope.

    Raises NotPowerLike when the two window estimates disagree by more than
    agreement_tol (slope still drifting; no stable index).
    """
    s1, _ = _slope(f, tail_fraction)
    s2, _ = _slope(f, tail_fraction / 2.0)
    if abs(s1 - s2) > agreement_tol:
        raise NotPowerLike(f"window slopes differ: {s1:.4g} vs {s2:.4g}")
    return s1


def rv_index_diagnostics(f: SampledFunction) -> dict:
    s1, r1 = _slope(f, DEFAULT_TAIL_FRACTION)
    s2, r2 = _slope(f, CHECK_TAIL_FRACTION)
    return {
        "slope_half": s1,
        "slope_quarter": s2,
        "residual_half": r1,
        "residual_quarter": r2,
    }


def matuszewska_indices(
    f: SampledFunction,
    probes=DEFAULT_PROBES,
) -> tuple[float, float]:
    """(lower, upper) index estimates sandwiching the scaling-ratio bounds.

    lower = max over probe lambdas of log f_*(lambda)/log lambda,
    upper = min over probe lambdas of log f*(lambda)/log lambda.
    """
    lowers, uppers = [], []
    for lam in probes:
        rb = ratio_bounds(f, lam)
        lowers.append(np.log(rb.lower) / np.log(lam))
        uppers.append(np.log(rb.upper) / np.log(lam))
    return float(max(lowers)), float(min(uppers))


def classify(
    f: SampledFunction,
    probes=DEFAULT_PROBES,
    rv_tolerance: float = RV_TOLERANCE,
) -> RvClassification:
    """Classify f as RV / ER / OR / UNBOUNDED from tail-window scaling ratios."""
    bounds = [ratio_bounds(f, lam) for lam in probes]
    finite = all(
        np.isfinite(b.upper) and np.isfinite(b.lower) and b.lower > 0 for b in bounds
    )
    if not finite:
        return RvClassification(kind=RvKind.UNBOUNDED)
    # Super-power-law growth: the window slope keeps climbing as the window
    # shrinks toward the end of the grid; f*(lambda) diverges.
    s_half, _ = _slope(f, DEFAULT_TAIL_FRACTION)
    s_quarter, _ = _slope(f, CHECK_TAIL_FRACTION)
    if s_quarter - s_half > UNBOUNDED_SLOPE_GAP:
        return RvClassification(kind=RvKind.UNBOUNDED)
    widths = [
        np.log(b.upper / b.lower) / np.log(b.lam) for b in bounds
    ]
    interval = matuszewska_indices(f, probes)
    if max(widths) < rv_tolerance:
        return RvClassification(kind=RvKind.RV, index=s_half, index_interval=interval)
    return RvClassification(kind=RvKind.ER, index=None, index_interval=interval)


def sv_epsilon_fit(L: SampledFunction) -> SlowVaryRep:
    """Fit the Karamata representation of a slowly varying L.

    epsilon(t) = t * dlog L/dt by central differences on the log grid;
    h0 is the trailing mean of L(t) * exp(-int epsilon/s ds).
    """
    if len(L) < 256:
        raise GridTooShort("sv_epsilon_fit needs >= 256 points")
    tau = L.log_grid
    eps = np.gradient(L.log_values, tau)
    tail = eps[_tail_slice(len(L), DEFAULT_TAIL_FRACTION)]
    if np.max(np.abs(tail)) > 10.0:
        raise DifferentiationUnstable("|epsilon| envelope exceeds 10 on the trailing window")
    integral = cumulative_trapezoid(eps, tau, initial=0.0)
    h = L.values * np.exp(-integral)
    h0 = float(np.mean(h[_tail_slice(len(L), DEFAULT_TAIL_FRACTION)]))
    return SlowVaryRep(h0=h0, epsilon=GridSeries(L.grid, eps))


def sv_reconstruct(rep: SlowVaryRep) -> SampledFunction:
    """Rebuild L(t) = h0 * exp(int epsilon/s ds) on the representation grid."""
    tau = np.log(rep.epsilon.grid)
    integral = cumulative_trapezoid(rep.epsilon.values, tau, initial=0.0)
    return SampledFunction(rep.epsilon.grid, rep.h0 * np.exp(integral))


def strip_visits(
    f: SampledFunction,
    inner_low: float,
    inner_high: float,
) -> tuple[int, int]:
    """Count maximal grid runs with f <= t**inner_low and f >= t**inner_high.

    The grid is expected to be normalized so t >= 1 (power-law strips only
    order correctly there).
    """
    if inner_low >= inner_high:
        raise ValueError("need inner_low < inner_high")
    tau = f.log_grid
    logf = f.log_values
    low_mask = logf <= inner_low * tau
    high_mask = logf >= inner_high * tau
    return _count_runs(low_mask), _count_runs(high_mask)


def _count_runs(mask: np.ndarray) -> int:
    if not mask.any():
        return 0
    m = mask.astype(int)
    starts = int(m[0] == 1) + int(np.sum((np.diff(m) == 1)))
    return starts

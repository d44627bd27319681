"""Carroll-Press-Turner age functions F(Omega) and friends.

Closed forms for the flat (k=0) and open (k=-1) matter(+Lambda) universes,
mu(Omega) = (Omega/2) F(Omega)^2, the deceleration relation, monotone
inversion, and scale-factor reconstruction from a density-parameter track.

The flat closed form is evaluated as

    F(Omega) = (2/3) * (log1p(s) - 0.5*log(Omega)) / s,   s = sqrt(1-Omega)

which is algebraically identical to the textbook expression
(2/3)(1-Omega)^(-1/2) * ln((1+sqrt(1-Omega))/sqrt(Omega)) but stays
bit-stable down to Omega ~ 1e-300.  Near Omega -> 1 both curvatures switch
to rapidly converging series in e = 1-Omega (the closed forms cancel
catastrophically there):

    flat:  F = (2/3) * sum_{n>=0} e^n/(2n+1)          (= (2/3) atanh(s)/s)
    open:  F = sum_{n>=0} 2 e^n / ((2n+1)(2n+3))
"""

from __future__ import annotations

import enum

import numpy as np
from scipy.integrate import cumulative_trapezoid

from .errors import DomainError, NotMonotone, OutOfRange
from .sampled import SampledFunction

# Switch to the e = 1-Omega series here; the series tails (~e^8) are far
# below the 1e-9 continuity requirement at the switch points.  The open
# closed form loses ~eps/(4e) relative accuracy in arccosh near Omega = 1,
# so its switch sits much earlier than the flat one.
SERIES_SWITCH = 1e-6
OPEN_SERIES_SWITCH = 1e-3
F_LIMIT_AT_ONE = 2.0 / 3.0
INVERSION_TOL = 1e-12


class Curvature(enum.Enum):
    FLAT = 0
    OPEN = -1
    CLOSED = 1

    @classmethod
    def from_name(cls, name: str) -> "Curvature":
        try:
            return cls[name.strip().upper()]
        except KeyError:
            raise DomainError(f"unknown curvature {name!r}") from None


def _check_omega(omega: np.ndarray) -> None:
    if np.any(omega <= 0.0) or np.any(omega >= 1.0):
        raise DomainError("Omega must lie strictly inside (0, 1)")


def _f_flat(omega: np.ndarray) -> np.ndarray:
    e = 1.0 - omega
    out = np.empty_like(omega)
    near_one = e < SERIES_SWITCH
    if np.any(near_one):
        en = e[near_one]
        acc = np.zeros_like(en)
        for n in range(7, -1, -1):
            acc = acc * en + 1.0 / (2 * n + 1)
        out[near_one] = F_LIMIT_AT_ONE * acc
    rest = ~near_one
    if np.any(rest):
        s = np.sqrt(e[rest])
        out[rest] = F_LIMIT_AT_ONE * (np.log1p(s) - 0.5 * np.log(omega[rest])) / s
    return out


def _f_open(omega: np.ndarray) -> np.ndarray:
    e = 1.0 - omega
    out = np.empty_like(omega)
    near_one = e < OPEN_SERIES_SWITCH
    if np.any(near_one):
        en = e[near_one]
        acc = np.zeros_like(en)
        for n in range(7, -1, -1):
            acc = acc * en + 2.0 / ((2 * n + 1) * (2 * n + 3))
        out[near_one] = acc
    rest = ~near_one
    if np.any(rest):
        om = omega[rest]
        er = e[rest]
        x = (2.0 - om) / om
        # arccosh(x) as ln(x + sqrt(x^2-1)): bit-stable for large x.
        acosh = np.log(x + np.sqrt(x * x - 1.0))
        out[rest] = 1.0 / er - om * acosh / (2.0 * er ** 1.5)
    return out


def f_omega(omega, k: Curvature):
    """CPT dimensionless age function F(Omega) for flat or open universes."""
    om = np.asarray(omega, dtype=float)
    scalar = om.ndim == 0
    om = np.atleast_1d(om)
    _check_omega(om)
    if k is Curvature.FLAT:
        out = _f_flat(om)
    elif k is Curvature.OPEN:
        out = _f_open(om)
    else:
        raise DomainError("F(Omega) is defined for FLAT and OPEN only")
    return float(out[0]) if scalar else out


def mu_of_omega(omega, k: Curvature):
    """mu(Omega) = (Omega/2) * F(Omega)^2."""
    om = np.asarray(omega, dtype=float)
    return om / 2.0 * np.square(f_omega(omega, k))


def q_of(omega, omega_lambda):
    """Deceleration parameter of the matter+Lambda model: q = Omega/2 - Omega_Lambda."""
    return np.asarray(omega, dtype=float) / 2.0 - np.asarray(omega_lambda, dtype=float)


def _range_check(target: float, k: Curvature) -> None:
    if k is Curvature.FLAT:
        if not target > F_LIMIT_AT_ONE:
            raise OutOfRange(f"flat F range is (2/3, inf); got {target}")
    elif k is Curvature.OPEN:
        if not (F_LIMIT_AT_ONE < target < 1.0):
            raise OutOfRange(f"open F range is (2/3, 1); got {target}")
    else:
        raise DomainError("inversion is defined for FLAT and OPEN only")


def f_omega_inverse(target: float, k: Curvature, tol: float = INVERSION_TOL) -> float:
    """Invert F(Omega) by bisection to |F(Omega) - target| < tol."""
    target = float(target)
    _range_check(target, k)
    hi = 1.0 - 1e-15
    if k is Curvature.FLAT:
        lo = 0.5
        while f_omega(lo, k) < target:
            lo = lo * lo
            if lo < 1e-300:
                raise OutOfRange(f"target {target} beyond representable flat F range")
    else:
        lo = 1e-15
    # Diagnostic monotonicity check on the bracket before bisecting.
    probe = np.geomspace(max(lo, 1e-15), hi, 9)
    fp = f_omega(probe, k)
    if np.any(np.diff(fp) >= 0):
        raise NotMonotone("F(Omega) failed the decreasing check on the bracket")
    a, b = lo, hi  # F(a) >= target >= F(b)
    for _ in range(300):
        mid = 0.5 * (a + b)
        fm = f_omega(mid, k)
        if abs(fm - target) < tol:
            return mid
        if fm > target:
            a = mid
        else:
            b = mid
        if b - a <= np.finfo(float).eps * max(abs(a), 1.0):
            break
    return 0.5 * (a + b)


def reconstruct_a(
    omega_track: SampledFunction,
    k: Curvature,
    t0: float,
    a0: float,
) -> SampledFunction:
    """Rebuild the scale factor a(t) = a0 * exp(int F(Omega(s))/s ds) from t0.

    The cumulative quadrature is trapezoidal in log t, exact when F is
    constant along the track.
    """
    if a0 <= 0:
        raise DomainError("a0 must be positive")
    if not np.isclose(omega_track.grid[0], t0, rtol=1e-12, atol=0.0):
        raise DomainError("omega_track grid must start at t0")
    F = f_omega(omega_track.values, k)
    tau = omega_track.log_grid
    integral = cumulative_trapezoid(F, tau, initial=0.0)
    return SampledFunction(omega_track.grid, a0 * np.exp(integral))

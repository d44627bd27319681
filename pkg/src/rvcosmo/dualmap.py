"""The involutive dual-universe map on equation-of-state parameters.

w_beta = (1 - w)/(1 + 3w) swaps the two characteristic exponents
alpha = 2/(3(1+w_alpha)) and beta = 2/(3(1+w_beta)) of x^2 - x + Gamma = 0
while leaving Gamma (and time) fixed.  The symmetric identity
w_alpha + w_beta + 3*w_alpha*w_beta = 1 defines the map even at w = -1,
where alpha, beta, Gamma themselves are undefined.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PoleError, SingularEos
from .gammafun import char_roots, gamma_of_w

POLE_BAND = 1e-9


@dataclass(frozen=True)
class DualPair:
    w_alpha: float
    w_beta: float
    gamma: float
    alpha: float
    beta: float

    def __post_init__(self):
        # Grouped as w_a + w_b*(1 + 3 w_a) - 1 to avoid cancellation of the
        # two large terms near the pole.
        identity = self.w_alpha + self.w_beta * (1.0 + 3.0 * self.w_alpha) - 1.0
        if abs(identity) > 1e-12:
            raise ValueError(f"symmetric identity violated by {identity:.3g}")
        if abs(self.alpha + self.beta - 1.0) > 1e-12:
            raise ValueError("alpha + beta must equal 1")
        if abs(self.alpha * self.beta - self.gamma) > 1e-12:
            raise ValueError("alpha * beta must equal gamma")


def dual_w(w: float) -> float:
    """The dual equation-of-state constant (1 - w)/(1 + 3w).

    w = -1 maps to -1 (via the defining symmetric identity); the map has a
    pole at w = -1/3.
    """
    w = float(w)
    if abs(w + 1.0 / 3.0) < POLE_BAND:
        raise PoleError("pole at w = -1/3")
    if w == -1.0:
        return -1.0
    return (1.0 - w) / (1.0 + 3.0 * w)


def dual_params(w: float) -> DualPair:
    """Full dual parameter set for admissible w (excluding -1 and -1/3).

    The exponent pair {2/(3(1+w)), 2/(3(1+dual_w(w)))} coincides with the
    characteristic roots of x^2 - x + Gamma(w) = 0.  The dual exponent beta
    is the dual Hubble coefficient (H_dual ~ beta/t, a_dual ~ t^beta).
    """
    w = float(w)
    if w == -1.0:
        raise SingularEos("w = -1: alpha, beta, Gamma undefined for the dual pair")
    wb = dual_w(w)
    pa = gamma_of_w(w)
    alpha = pa.alpha
    beta = 2.0 / (3.0 * (1.0 + wb))
    lo, hi = char_roots(pa.gamma)
    pair_lo, pair_hi = min(alpha, beta), max(alpha, beta)
    scale = max(1.0, abs(pair_lo), abs(pair_hi))
    if abs(pair_lo - lo) > 1e-9 * scale or abs(pair_hi - hi) > 1e-9 * scale:
        raise ValueError("exponent pair does not match the characteristic roots")
    return DualPair(w_alpha=w, w_beta=wb, gamma=pa.gamma, alpha=alpha, beta=beta)


def dual_hubble_coeff(pair: DualPair) -> float:
    """Leading coefficient of the dual Hubble rate H_dual(t) ~ coeff/t."""
    return pair.beta

"""Exception types shared across the library."""


class RvcosmoError(Exception):
    """Base class for all library errors."""


class GridTooShort(RvcosmoError):
    """Grid does not carry enough points (or decades) for the estimator."""


class NonPositive(RvcosmoError):
    """A value that must be strictly positive is not."""


class NotPowerLike(RvcosmoError):
    """Trailing-window slope estimates disagree; no stable power-law index."""


class NotSlowlyVarying(RvcosmoError):
    """Input expected to be slowly varying (index ~ 0) is not."""


class DifferentiationUnstable(RvcosmoError):
    """Log-derivative estimate blew up on the trailing window."""


class DomainError(RvcosmoError):
    """Argument outside the mathematical domain of the operation."""


class OutOfRange(RvcosmoError):
    """Inversion target outside the range of the function."""


class NotMonotone(RvcosmoError):
    """Monotonicity check failed on the inversion bracket (diagnostic)."""


class TurningPoint(RvcosmoError):
    """Friedmann RHS went negative: recollapse/bounce regime."""


class StepFailure(RvcosmoError):
    """Adaptive ODE controller failed to meet the error contract."""


class IntegrationError(RvcosmoError):
    """Quadrature saw a non-finite integrand or an uncovered interval."""


class ComplexRoots(RvcosmoError):
    """Characteristic roots are not real (gamma > 1/4)."""


class CriticalGamma(RvcosmoError):
    """gamma is inside the critical band around 1/4; no fundamental pair."""


class SingularEos(RvcosmoError):
    """Equation-of-state parameter w = -1: alpha and gamma undefined."""


class PoleError(RvcosmoError):
    """Dual map evaluated at its pole w = -1/3."""


class BoundViolation(RvcosmoError):
    """Function left the [lower, upper] envelope it must stay inside."""


class DegenerateBounds(RvcosmoError):
    """Envelope width collapsed below representable resolution."""


class MissingDerivatives(RvcosmoError):
    """Oscillation model lacks the phase derivatives required here."""

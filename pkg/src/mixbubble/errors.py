"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class UsageError(ValueError):
    """Inconsistent or malformed inputs (grid mismatch, bad config, ...)."""


class GridMismatchError(UsageError):
    """Two fields that must share a grid do not."""


class AccuracyError(RuntimeError):
    """A numerical routine could not reach the requested tolerance.

    Carries the partial value and the error estimate so callers can decide
    whether the partial result is still usable.
    """

    def __init__(self, message, value=None, estimate=None):
        super().__init__(message)
        self.value = value
        self.estimate = estimate


class SingularOperatorError(RuntimeError):
    """The operator to invert has a (numerically) zero symbol."""


class ConvergenceError(RuntimeError):
    """An iteration hit its cap without meeting its stopping criterion."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace or []


class RegimeError(RuntimeError):
    """Parameters are outside the perturbative regime (ball exit, etc.)."""


class BracketError(ValueError):
    """A root bracket does not actually bracket a sign change."""


class VerificationError(RuntimeError):
    """A certified sign/identity check failed."""

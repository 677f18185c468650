"""Exception and warning types shared across the package."""


class QRadonError(Exception):
    """Base class for all package-specific errors."""


class DomainError(QRadonError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class RangeError(QRadonError, OverflowError):
    """The result exceeds the floating-point range.

    Carries ``safe_limit`` when a largest safe argument is known.
    """

    def __init__(self, msg, safe_limit=None):
        super().__init__(msg)
        self.safe_limit = safe_limit


class ConsistencyError(QRadonError):
    """An internal identity that must hold numerically was violated."""


class ConvergenceError(QRadonError):
    """A truncated series did not converge to the requested tolerance."""


class RepresentationError(QRadonError):
    """Two representations that must agree (up to a known span) do not."""


class AccuracyError(QRadonError):
    """A gated accuracy check (e.g. Richardson half-grid) failed."""


class WindowError(QRadonError):
    """A quadrature window does not cover the required tail mass."""


class AccuracyWarning(UserWarning):
    """Result is returned but its accuracy is degraded (e.g. coarse grid)."""


class UnreliableRegionWarning(UserWarning):
    """An asymptotic formula was evaluated outside its reliable region."""


class WindowWarning(UserWarning):
    """A quadrature window leaves more tail mass outside than requested."""

# Copyright (c) 2025 BlockGuard SF
# Licensed under the Apache-2.0 License.

class BaseSocaException(Exception):
    """Base exception for SOCA."""

    def __init__(self, *args, details=None):
        self.details = details
        super().__init__(*args)


# Source description errors
class SourceSpecError(BaseSocaException):
    """Exception raised when a source description breaks an invariant."""


class NegativeProbabilityError(SourceSpecError):
    """Exception raised when an eigenvalue is negative."""


class NotNormalizedError(SourceSpecError):
    """Exception raised when eigenvalues or weights do not sum to one.

    ``details`` holds the observed sum.
    """


class DimensionMismatchError(SourceSpecError):
    """Exception raised when components do not share one dimension."""


class EmptySpecError(SourceSpecError):
    """Exception raised when a mixed source has no component."""


class InvalidSourceError(SourceSpecError):
    """Exception raised by validation; ``details`` lists every violation."""


class DomainError(BaseSocaException):
    """Exception raised when an argument is outside the domain of a function."""


class GridSyntaxError(BaseSocaException):
    """Exception raised when a grid flag cannot be parsed."""


class EntropyOrderError(BaseSocaException):
    """Exception raised when two sources are not ordered by entropy."""


# Rate equation errors
class RateEquationError(BaseSocaException):
    """Exception raised when the second order rate equation has no usable solution."""


class DegenerateSigmaError(RateEquationError):
    """Exception raised when a component at the rate has zero information variance."""


class InfeasibleRateError(RateEquationError):
    """Exception raised when every second order rate solves the equation."""


class BoundaryTEqualsEpsError(RateEquationError):
    """Exception raised when the mixing weight coincides with the error threshold."""


class CapExceededError(BaseSocaException):
    """Exception raised when an enumeration would exceed its cap.

    ``details`` holds the required count.
    """


class SocaWarning(Warning):
    """Base warning for SOCA."""


class GuardBandWarning(SocaWarning):
    """Warning for type sizes that sit inside the log-domain guard band."""

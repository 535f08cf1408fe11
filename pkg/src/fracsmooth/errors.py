"""Exception types shared across the package."""


class FracsmoothError(Exception):
    """Base class for all package-specific errors."""


class InvalidArgumentError(FracsmoothError, ValueError):
    """An argument is outside the documented domain."""


class UnsupportedParameterError(FracsmoothError, ValueError):
    """A parameter combination is valid mathematically but not supported."""


class ConvergenceError(FracsmoothError, RuntimeError):
    """An iterative computation could not reach the requested tolerance.

    Attributes
    ----------
    partial : object or None
        Best value computed before giving up.
    achieved : float or None
        Error bound actually reached.
    """

    def __init__(self, message, partial=None, achieved=None):
        super().__init__(message)
        self.partial = partial
        self.achieved = achieved


class BracketError(FracsmoothError, RuntimeError):
    """A root bracket with the advertised sign change does not exist."""


class DomainTooSmallError(FracsmoothError, ValueError):
    """A truncated domain does not contain the declared tail decay."""


class ZeroDenominatorError(FracsmoothError, ZeroDivisionError):
    """A coefficientwise quotient hit a vanishing denominator.

    Carries the offending frequency in ``frequency``.
    """

    def __init__(self, message, frequency=None):
        super().__init__(message)
        self.frequency = frequency

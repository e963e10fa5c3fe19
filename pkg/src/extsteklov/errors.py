"""Exception hierarchy shared by all solver modules."""


class SteklovError(Exception):
    """Base class for all errors raised by this package."""


class InvalidDomainError(SteklovError):
    """Domain specification is malformed, non-closed, or self-intersecting."""


class InvalidCenterError(SteklovError):
    """Inversion center is on or outside the boundary."""


class MathDomainError(SteklovError, ValueError):
    """Argument outside the mathematical domain of a special function."""


class PreconditionError(SteklovError):
    """An operator precondition (e.g. diameter < 1) is violated."""


class SolverError(SteklovError):
    """Dense linear algebra failed (singular operator)."""


class EvaluationError(SteklovError):
    """Field evaluation requested at an invalid point."""


class InsufficientDataError(SteklovError):
    """Not enough eigenvalues for the requested fit."""


class UnsupportedCombinationError(SteklovError):
    """Requested sweep is only available for closed-form domains."""


class PartialResultError(SteklovError):
    """Fewer eigenvalues passed the filters than requested.

    Carries the valid prefix so callers can still use it (CLI exit code 2).
    """

    def __init__(self, message, spectrum):
        super().__init__(message)
        self.spectrum = spectrum

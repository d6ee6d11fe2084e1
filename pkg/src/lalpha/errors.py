class LAlphaError(Exception):
    """Base class for all errors raised by the package."""


class DomainError(LAlphaError, ValueError):
    """An argument lies outside the region where an operation is defined."""


class EvaluationError(LAlphaError):
    """A function model could not be evaluated at some node."""


class MembershipError(LAlphaError):
    """One or more candidate functions are not members of the requested class."""

    def __init__(self, message, failures=()):
        super().__init__(message)
        self.failures = list(failures)


class EscapeError(LAlphaError):
    """A trajectory reached the escape radius.

    This is a mathematical signal (the flow leaves the disk), not a numerical
    fault. ``time`` is the parameter value at which it happened.
    """

    def __init__(self, message, time, trajectory=None):
        super().__init__(message)
        self.time = time
        self.trajectory = trajectory


class StepLimitError(LAlphaError):
    pass


class ParseError(LAlphaError):
    def __init__(self, message, line=None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class ValidationError(LAlphaError, ValueError):
    pass

"""Exception types. The CLI maps each family to an exit status."""


class PlumbError(Exception):
    """Base class for all errors raised by this package."""

    exit_status = 1


class GraphInputError(PlumbError, ValueError):
    """Malformed graph text, unknown vertex, cycle, bad Seifert data."""

    exit_status = 3

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at offset {position})"
        super().__init__(message)
        self.position = position


class DomainError(PlumbError):
    """The input is well formed but violates a mathematical hypothesis."""

    exit_status = 1


class DegenerateFormError(DomainError):
    pass


class HypothesisError(DomainError):
    pass


class ResourceError(PlumbError):
    """State cap exceeded, stabilization not reached, unsound request."""

    exit_status = 2


class BudgetExceeded(ResourceError):
    pass


class StabilizationError(ResourceError):
    pass


class UnsoundRequest(ResourceError):
    pass

"""Shared exception types."""


class ArgumentError(ValueError):
    """Bad argument value (out of range, wrong size, unparsable)."""


class ValidationError(ValueError):
    """An input object fails its structural invariants."""


class PreconditionError(ValueError):
    """An operation was invoked outside its stated precondition."""


class MalformedGraphError(ValueError):
    """A strand walk or rotation system is inconsistent."""


class ResourceCapExceeded(RuntimeError):
    """An enumeration hit the configured vertex/step cap.

    Carries a partial count so callers can report progress.
    """

    def __init__(self, message, partial_count=None):
        super().__init__(message)
        self.partial_count = partial_count

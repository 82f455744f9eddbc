"""Exception types shared across the package."""


class PreconditionError(ValueError):
    """Raised when an operation is called outside its documented domain."""


class InvariantViolation(AssertionError):
    """A guaranteed object was not found, or internal bookkeeping disagrees.

    These indicate a bug in the library (or a target outside the promised
    class), never bad user input.
    """


class RoundLimitExceeded(RuntimeError):
    pass

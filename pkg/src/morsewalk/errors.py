class PreconditionError(ValueError):
    """An input violates the precondition of the requested operation."""


class ResourceCapError(RuntimeError):
    """The requested object would exceed a configured size cap."""


class InvariantViolation(RuntimeError):
    """A structural claim that must hold was found to be false.

    Raised instead of masking a counterexample, e.g. a walk graph whose minimum
    degree is below the guaranteed lower bound.
    """

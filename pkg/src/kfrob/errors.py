"""Exception hierarchy shared by every kfrob module."""


class KfrobError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class InvalidInstanceError(KfrobError, ValueError):
    pass


class NotPointedError(KfrobError, ValueError):
    """The cone of A contains a line, so lattice-point counts are infinite."""


class AssumptionViolatedError(KfrobError, ValueError):
    """Matrix fails the gcd-of-minors or pointedness assumption needed by a bound."""


class CeilingExceededError(KfrobError, RuntimeError):
    """A DP scan ran past its proven ceiling. Indicates a bug, not bad input."""


class BoxTooLargeError(KfrobError, ValueError):
    pass


class SearchExhaustedError(KfrobError, RuntimeError):
    pass


class IncompleteBasisError(KfrobError, ValueError):
    pass


class ResourceLimitError(KfrobError, MemoryError):
    pass

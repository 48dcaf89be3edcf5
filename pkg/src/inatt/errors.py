"""Exception hierarchy shared by every module."""


class InattError(Exception):
    """Base class; the CLI maps any subclass to exit code 1."""


class DomainError(InattError, ValueError):
    """An argument lies outside the domain of the operation."""


class InvariantError(InattError, ValueError):
    """A value object violates one of its structural invariants."""


class CostValidationError(InattError, ValueError):
    """A cost function failed the symmetry or strict-convexity checks."""


class PreconditionError(InattError, ValueError):
    """The hypothesis of a constructive result does not hold."""


class SearchError(InattError, RuntimeError):
    """A bounded search finished without finding what it was looking for."""

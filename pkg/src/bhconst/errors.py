"""Exception types shared across the package."""


class BHConstError(Exception):
    """Base class for all package errors."""


class DomainError(BHConstError, ValueError):
    """An argument lies outside the domain of the operation."""


class BracketError(BHConstError, ValueError):
    """The supplied interval does not bracket a sign change."""


class ConvergenceError(BHConstError, RuntimeError):
    """An iteration hit its cap before meeting the tolerance."""


class SizeError(BHConstError, ValueError):
    """The requested enumeration exceeds the configured cost cap."""

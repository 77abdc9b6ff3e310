"""Exception types shared across the package."""


class DomainError(ValueError):
    """Argument outside the domain of a function or model."""


class UnsupportedOrder(ValueError):
    """Angular-momentum order outside the implemented range."""


class ConvergenceError(RuntimeError):
    """A series or iteration failed to reach the requested tolerance."""

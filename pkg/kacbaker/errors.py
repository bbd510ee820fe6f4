"""Exception hierarchy."""


class KacBakerError(Exception):
    """Base class for all library errors."""


class ConfigError(KacBakerError, ValueError):
    """Invalid configuration or run parameters."""


class DomainError(KacBakerError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class UnsupportedDomainError(DomainError):
    """Argument valid in principle but outside what an operation supports."""


class ResourceLimitError(KacBakerError, RuntimeError):
    """Request would exceed a configured resource limit."""


class ConvergenceError(KacBakerError, RuntimeError):
    """Iterative procedure failed to converge.

    ``diagnostics`` carries whatever the failing routine recorded
    (iteration counts, last movement, dimension reached).
    """

    def __init__(self, message: str, **diagnostics):
        super().__init__(message)
        self.diagnostics = diagnostics

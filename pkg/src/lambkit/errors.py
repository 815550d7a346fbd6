"""Exception types shared by every lambkit module."""


class LambkitError(Exception):
    """Base class for errors raised on bad input or failed numerics."""


class ConfigurationError(LambkitError, ValueError):
    """A constants or reference-values document is malformed."""


class DomainError(LambkitError, ValueError):
    """An argument violates an operation's precondition."""


class ConvergenceError(LambkitError, RuntimeError):
    """A numerical solver did not converge."""

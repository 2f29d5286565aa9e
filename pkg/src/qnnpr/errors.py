"""Exception hierarchy shared by every module."""


class QnnprError(Exception):
    """Base class for all errors raised by this package."""


class RejectedInput(QnnprError, ValueError):
    """An argument violates a documented precondition."""


class IntegrityError(QnnprError):
    """An internal object is in a state it should never reach (e.g. unnormalized)."""


class DegreesOfFreedomError(QnnprError, ArithmeticError):
    """Not enough residual degrees of freedom for a variance estimate."""


class EmptyNeighborhoodError(QnnprError, ArithmeticError):
    """Every kernel weight vanished at the query point."""


class DataError(QnnprError):
    """Input data could not be read or parsed."""


class ConfigError(QnnprError):
    """Command-line or run configuration is invalid."""

"""Custom errors for fdre."""

###################################################################################################
###################################################################################################

class FdreError(Exception):
    """Base class for custom errors in fdre."""
    pass


class ShapeError(FdreError, ValueError):
    """Custom error for when array shapes or dimensions do not match."""
    pass


class NonFiniteError(FdreError, ArithmeticError):
    """Custom error for when a NaN or infinite value reaches an operation boundary."""
    pass


class DivergenceError(NonFiniteError):
    """Custom error for when a loss value becomes non-finite, signalling training divergence."""
    pass


class TapeError(FdreError, RuntimeError):
    """Custom error for when a gradient tape is used out of order."""
    pass


class HypothesisError(FdreError, ValueError):
    """Custom error for when a check is requested outside of the hypotheses it relies on."""
    pass


class ConfigError(FdreError, ValueError):
    """Custom error for when a configuration is invalid."""
    pass


class InconsistentDataError(FdreError):
    """Custom error for when data is inconsistent."""
    pass

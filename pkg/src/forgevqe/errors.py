"""Exception types shared across the package."""


class ForgeError(Exception):
    """Base class for all package-specific errors."""


class DimensionError(ForgeError):
    """Operand widths or shapes are incompatible."""


class InvalidInputError(ForgeError):
    """Input violates a documented precondition."""


class ConsistencyError(ForgeError):
    """An internal numerical invariant was violated."""


class ConfigError(ForgeError):
    """Experiment configuration is invalid or infeasible."""


class TrainingError(ForgeError):
    """Optimization diverged (NaN loss or gradient)."""


class ParseError(ForgeError):
    """A data file could not be parsed; message carries the line number."""

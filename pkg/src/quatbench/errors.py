"""Typed errors raised by the quatbench core.

Every recoverable failure is a subclass of QuatbenchError so callers (the
service layer, the CLI) can map them to error responses / exit codes without
string matching.
"""


class QuatbenchError(Exception):
    """Base class for all quatbench errors."""


class ZeroNorm(QuatbenchError):
    """Operation requires a nonzero quaternion."""


class InvalidCount(QuatbenchError):
    """Requested sample count is not a positive integer."""


class InvalidFraction(QuatbenchError):
    """Split or learning-curve fraction outside its valid range."""


class DegenerateData(QuatbenchError):
    """Training data does not contain enough samples per class."""


class SingularScatter(QuatbenchError):
    """Within-class scatter is singular and no ridge was requested."""


class InvalidK(QuatbenchError):
    """Neighbor count k outside 1..len(train)."""


class WidthMismatch(QuatbenchError):
    """Feature width of the input does not match the model."""


class LengthMismatch(QuatbenchError):
    """Paired sequences have different lengths."""


class EmptyInput(QuatbenchError):
    """Operation requires at least one element."""


class ZeroTrueValue(QuatbenchError):
    """Ratio-based loss metrics are undefined when a true value is 0."""


class ConfigError(QuatbenchError):
    """Experiment configuration failed validation."""

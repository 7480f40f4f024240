"""Exception hierarchy shared across the toolkit."""


class WarstatsError(Exception):
    """Base class for all toolkit errors."""


class FormatError(WarstatsError):
    """Input file is malformed (bad header, empty file, bad delimiter)."""


class RangeError(WarstatsError):
    """A year or threshold falls outside the supported range."""


class DegenerateInputError(WarstatsError):
    """Input is structurally valid but statistically degenerate (e.g. zero variance)."""


class FitError(WarstatsError):
    """Nonlinear fitting failed (too few points, non-finite residuals, damping overflow)."""

# support/errors.py
"""
Error Hierarchy
Every failure the engine can report, grouped by the exit code the CLI maps it to
"""

from config.settings import EXIT_INVALID, EXIT_SHAPE


class MirrorError(Exception):
    """Base class for all engine errors. Subclasses fix the CLI exit code."""

    exit_code = EXIT_SHAPE

    def __init__(self, message: str = ""):
        super().__init__(message or self.__class__.__name__)
        self.message = message or self.__class__.__name__

    @property
    def rule(self) -> str:
        """Name of the violated rule, as printed by the CLI"""
        return self.__class__.__name__


# ============ SERIES ALGEBRA ============

class SeriesError(MirrorError):
    """Arithmetic misuse inside the series tower"""


class ZeroLeading(SeriesError):
    pass


class NonMonomialLeading(SeriesError):
    pass


class NonNilpotentConstant(SeriesError):
    pass


class OutOfRange(SeriesError):
    pass


class BadShift(SeriesError):
    pass


class TDegreeOverflow(SeriesError):
    pass


class IncompatibleDimension(SeriesError):
    """Two PClass/LogQSeries values with different ambient dimension met"""


# ============ INPUT VALIDATION ============

class ValidationError(MirrorError):
    """Bad request: the CLI exits with status 2"""

    exit_code = EXIT_INVALID


class InvalidBundle(ValidationError):
    pass


class InvalidInsertion(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class PrecisionBudget(ValidationError):
    pass


class WrongBundleClass(ValidationError):
    pass


class HeightMismatch(ValidationError):
    pass


class MixedBundles(ValidationError):
    pass


class NonUnit(ValidationError):
    pass


class MissingDegrees(ValidationError):
    pass


class Inapplicable(ValidationError):
    pass


class NonGenericWeights(ValidationError):
    pass


class ConfigError(ValidationError):
    pass


# ============ CONVENTION ERRORS ============

class ShapeViolation(MirrorError):
    """
    An extraction cell or a normalized series has the wrong shape.
    Never data: it means a sign or offset convention is broken upstream.
    """

    exit_code = EXIT_SHAPE

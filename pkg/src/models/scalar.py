"""
Scalar values in exact rational or binary64 float mode.

Rationals are fractions.Fraction, floats are plain Python floats. In files rationals are written as
"p/q" strings (or "p" for integers), floats as JSON numbers.
"""

from fractions import Fraction

from src.models.errors import ConsensusLabError


class Scalar:

    MODE_RATIONAL = "rational"
    MODE_FLOAT = "float"
    MODES = [MODE_RATIONAL, MODE_FLOAT]

    # Equality tolerance for float mode
    FLOAT_TOLERANCE = 1e-12

    def __init__(self):
        raise RuntimeError("No instance of this class is permitted")

    ##########
    # Public #
    ##########

    @classmethod
    def check_mode(cls, mode):
        if mode not in cls.MODES:
            raise ConsensusLabError(f"Invalid mode '{mode}', expected one of {cls.MODES}")
        return mode

    @staticmethod
    def to_fraction(value):
        if isinstance(value, Fraction):
            return value
        if isinstance(value, bool):
            raise ConsensusLabError(f"Invalid scalar value: {value}")
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, float):
            # Use the shortest decimal representation, so 0.2 becomes 1/5
            return Fraction(repr(float(value)))
        if isinstance(value, str):
            try:
                return Fraction(value.strip())
            except (ValueError, ZeroDivisionError) as e:
                raise ConsensusLabError(f"Invalid scalar value: '{value}'") from e
        # numpy integer and float types
        try:
            return Fraction(value)
        except (TypeError, ValueError) as e:
            raise ConsensusLabError(f"Invalid scalar value: {value}") from e

    @classmethod
    def to_float(cls, value):
        if isinstance(value, str):
            return float(cls.to_fraction(value))
        return float(value)

    @classmethod
    def convert(cls, value, mode):
        if cls.check_mode(mode) == cls.MODE_RATIONAL:
            return cls.to_fraction(value)
        return cls.to_float(value)

    @classmethod
    def detect_mode(cls, values):
        for value in values:
            if isinstance(value, float):
                return cls.MODE_FLOAT
            if hasattr(value, "dtype") and value.dtype.kind == "f":
                return cls.MODE_FLOAT
        return cls.MODE_RATIONAL

    @staticmethod
    def to_text(value):
        if isinstance(value, Fraction):
            if value.denominator == 1:
                return str(value.numerator)
            return f"{value.numerator}/{value.denominator}"
        if isinstance(value, int):
            return str(value)
        return repr(float(value))

    @classmethod
    def to_json(cls, value):
        if isinstance(value, (Fraction, int)):
            return cls.to_text(value)
        return float(value)

    @classmethod
    def from_json(cls, value, mode):
        return cls.convert(value, mode)

    @classmethod
    def is_close(cls, a, b, tolerance=None):
        if isinstance(a, Fraction) and isinstance(b, Fraction):
            return a == b
        if tolerance is None:
            tolerance = cls.FLOAT_TOLERANCE
        return abs(float(a) - float(b)) <= tolerance


if __name__ == "__main__":

    from tests.unit_tests.test_models.test_scalar import TestScalar

    TestScalar().run(True)

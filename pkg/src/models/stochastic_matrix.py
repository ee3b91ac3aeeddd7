"""
Row-stochastic weight matrix A(t).

Entries are kept in a read-only numpy array: dtype=object holding Fractions in rational mode,
float64 in float mode. Rows must sum to one (exactly, or within Scalar.FLOAT_TOLERANCE in float
mode). Rows are never re-normalized.
"""

import math
import numpy

from fractions import Fraction

from src.models.errors import DimensionError
from src.models.errors import StochasticityError
from src.models.scalar import Scalar


class StochasticMatrix:

    KEY_ALPHA = "alpha"
    KEY_MODE = "mode"
    KEY_N = "n"
    KEY_ROWS = "rows"

    def __init__(self, rows, mode=None, alpha=None, validate=True):
        if mode is None:
            mode = self._detect_mode(rows)
        self._mode = Scalar.check_mode(mode)
        self._entries = self._create_entries(rows, self._mode)
        if self._entries.ndim != 2 or self._entries.shape[0] != self._entries.shape[1]:
            raise DimensionError(f"Matrix is not square, shape: {self._entries.shape}")
        if self._entries.shape[0] == 0:
            raise DimensionError("Matrix has dimension 0")
        self._entries.setflags(write=False)
        self._alpha = None if alpha is None else Scalar.to_fraction(alpha)
        self._scaled_integers = None
        if validate:
            self._validate()

    def __eq__(self, other):
        if not isinstance(other, StochasticMatrix):
            return NotImplemented
        return (self._mode == other.get_mode() and self.get_n() == other.get_n() and
                bool(numpy.all(self._entries == other.get_entries())))

    __hash__ = None

    def __str__(self):
        lines = []
        for row in self._entries:
            lines.append("  ".join(map(Scalar.to_text, row)))
        return "\n".join(lines)

    def __repr__(self):
        return f"StochasticMatrix(n={self.get_n()}, mode={self._mode})"

    ###########
    # Private #
    ###########

    @staticmethod
    def _detect_mode(rows):
        if isinstance(rows, numpy.ndarray):
            if rows.dtype.kind == "f":
                return Scalar.MODE_FLOAT
            if rows.dtype.kind in "iub":
                return Scalar.MODE_RATIONAL
            return Scalar.detect_mode(rows.ravel())
        values = []
        for row in rows:
            values.extend(row)
        return Scalar.detect_mode(values)

    @staticmethod
    def _create_entries(rows, mode):
        if mode == Scalar.MODE_FLOAT:
            if isinstance(rows, numpy.ndarray) and rows.dtype.kind != "O":
                return numpy.array(rows, dtype=float)
            return numpy.array([[Scalar.to_float(value) for value in row] for row in rows],
                               dtype=float)
        converted = [[Scalar.to_fraction(value) for value in row] for row in rows]
        n = len(converted)
        entries = numpy.empty((n, len(converted[0]) if n > 0 else 0), dtype=object)
        for i, row in enumerate(converted):
            if len(row) != entries.shape[1]:
                raise DimensionError(f"Row {i + 1} has {len(row)} entries, expected "
                                     f"{entries.shape[1]}")
            for j, value in enumerate(row):
                entries[i, j] = value
        return entries

    def _validate(self):
        n = self.get_n()
        for i in range(n):
            row = self._entries[i]
            negatives = list(filter(lambda x: row[x] < 0, range(n)))
            if len(negatives) > 0:
                raise StochasticityError(
                    f"Negative entry at ({i + 1},{negatives[0] + 1}): "
                    f"{Scalar.to_text(row[negatives[0]])}")
            row_sum = sum(row)
            if self._mode == Scalar.MODE_RATIONAL:
                if row_sum != 1:
                    raise StochasticityError(
                        f"Row {i + 1} sums to {Scalar.to_text(row_sum)}, expected 1")
            elif abs(row_sum - 1.0) > Scalar.FLOAT_TOLERANCE:
                raise StochasticityError(f"Row {i + 1} sums to {row_sum!r}, expected 1 within "
                                         f"{Scalar.FLOAT_TOLERANCE}")
            if self._alpha is not None:
                threshold = self._alpha
                if self._mode == Scalar.MODE_FLOAT:
                    threshold = float(self._alpha) - Scalar.FLOAT_TOLERANCE
                too_small = list(filter(lambda x: 0 < row[x] < threshold, range(n)))
                if len(too_small) > 0:
                    raise StochasticityError(
                        f"Positive entry at ({i + 1},{too_small[0] + 1}) is "
                        f"{Scalar.to_text(row[too_small[0]])}, below alpha "
                        f"{Scalar.to_text(self._alpha)}")

    ##########
    # Public #
    ##########

    def get_n(self):
        return self._entries.shape[0]

    def get_mode(self):
        return self._mode

    def is_rational(self):
        return self._mode == Scalar.MODE_RATIONAL

    def get_alpha(self):
        return self._alpha

    def get_entries(self):
        return self._entries

    def get_value(self, row, column):
        return self._entries[row, column]

    def get_pattern(self):
        return self._entries > 0

    def has_self_loops(self):
        return all(self._entries[i, i] > 0 for i in range(self.get_n()))

    def get_min_positive(self):
        return min(filter(lambda x: x > 0, self._entries.ravel()))

    def get_scaled_integers(self):
        """
        Returns (numerators, denominator) with entries = numerators / denominator.
        Only for rational mode. Products of integer matrices avoid the gcd work of Fractions.
        """
        if not self.is_rational():
            raise StochasticityError("Scaled integers are only available in rational mode")
        if self._scaled_integers is None:
            denominator = math.lcm(*map(lambda x: x.denominator, self._entries.ravel()))
            numerators = numpy.empty(self._entries.shape, dtype=object)
            for index, value in numpy.ndenumerate(self._entries):
                numerators[index] = value.numerator * (denominator // value.denominator)
            self._scaled_integers = (numerators, denominator)
        return self._scaled_integers

    @classmethod
    def from_scaled_integers(cls, numerators, denominator, alpha=None, validate=False):
        entries = numpy.empty(numerators.shape, dtype=object)
        for index, value in numpy.ndenumerate(numerators):
            entries[index] = Fraction(int(value), denominator)
        return cls(entries, Scalar.MODE_RATIONAL, alpha, validate)

    def multiply(self, other):
        """Returns self * other, so other is applied first."""
        if self.get_n() != other.get_n():
            raise DimensionError(f"Cannot multiply {self.get_n()}x{self.get_n()} with "
                                 f"{other.get_n()}x{other.get_n()}")
        left, right = self, other
        if self._mode != other.get_mode():
            left, right = self.to_float(), other.to_float()
        if left.is_rational():
            left_numerators, left_denominator = left.get_scaled_integers()
            right_numerators, right_denominator = right.get_scaled_integers()
            return self.from_scaled_integers(left_numerators.dot(right_numerators),
                                             left_denominator * right_denominator)
        return StochasticMatrix(left.get_entries().dot(right.get_entries()), Scalar.MODE_FLOAT,
                                validate=False)

    def apply(self, vector):
        values = numpy.array(list(vector), dtype=object if self.is_rational() else float)
        if values.shape[0] != self.get_n():
            raise DimensionError(f"Vector has length {values.shape[0]}, expected {self.get_n()}")
        return self._entries.dot(values)

    def to_float(self):
        if not self.is_rational():
            return self
        return StochasticMatrix(self._entries.astype(float), Scalar.MODE_FLOAT, self._alpha,
                                validate=False)

    def to_dict(self):
        d = {
            self.KEY_N: self.get_n(),
            self.KEY_MODE: self._mode,
            self.KEY_ROWS: [list(map(Scalar.to_json, row)) for row in self._entries]
        }
        if self._alpha is not None:
            d[self.KEY_ALPHA] = Scalar.to_text(self._alpha)
        return d

    @classmethod
    def from_dict(cls, d, alpha=None):
        mode = Scalar.check_mode(d.get(cls.KEY_MODE, Scalar.MODE_RATIONAL))
        rows = d[cls.KEY_ROWS]
        if len(rows) != d.get(cls.KEY_N, len(rows)):
            raise DimensionError(f"Field '{cls.KEY_N}' is {d[cls.KEY_N]}, but there are "
                                 f"{len(rows)} rows")
        if alpha is None and cls.KEY_ALPHA in d:
            alpha = d[cls.KEY_ALPHA]
        return cls([[Scalar.from_json(value, mode) for value in row] for row in rows], mode,
                   alpha)

    @classmethod
    def identity(cls, n, mode=Scalar.MODE_RATIONAL):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], mode)

    @classmethod
    def uniform(cls, n, mode=Scalar.MODE_RATIONAL):
        return cls([[Fraction(1, n)] * n for _ in range(n)], mode)


if __name__ == "__main__":

    from tests.unit_tests.test_models.test_stochastic_matrix import TestStochasticMatrix

    TestStochasticMatrix().run(True)

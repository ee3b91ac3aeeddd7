"""
Stochastic matrix analysis: oscillation, the max-min seminorm, coefficients of ergodicity,
products and convergence certificates.

Products always put later matrices on the left: chain_product([A0, A1, A2]) = A2 A1 A0.
"""

import itertools
import networkx
import numpy

from fractions import Fraction

from src.models.errors import CapabilityError
from src.models.errors import ConsensusLabError
from src.models.errors import DimensionError
from src.models.errors import EnumerationCapError
from src.models.errors import ToleranceError
from src.models.scalar import Scalar
from src.models.stochastic_matrix import StochasticMatrix


class MatrixCore:

    KEY_ALL_ERGODIC = "all_ergodic"
    KEY_CONVERGED = "converged"
    KEY_DISTINCT_PATTERNS = "distinct_patterns"
    KEY_FINAL_SEMINORM = "final_seminorm"
    KEY_LIMIT_ROW = "limit_row"
    KEY_MAX_SEMINORM = "max_seminorm"
    KEY_NON_ERGODIC_WITNESS = "non_ergodic_witness"
    KEY_NON_INCREASING = "non_increasing"
    KEY_PRODUCT_LENGTH = "product_length"
    KEY_PRODUCTS = "products"
    KEY_SEMINORMS = "seminorms"
    KEY_T_HIT = "t_hit"
    KEY_WITNESS = "witness"

    MAX_SEMINORM_DIMENSION = 20
    DEFAULT_ENUMERATION_CAP = 1000000

    def __init__(self):
        raise RuntimeError("No instance of this class is permitted")

    ###########
    # Private #
    ###########

    @staticmethod
    def _max_subset_osc(columns):
        """
        Scans the subsets I that contain the first column, in Gray code order, so each step adds
        or removes one column of the running sum. Returns (max osc, subset mask).
        Subsets without the first column are complements of scanned ones and give the same osc.
        """
        n = columns.shape[1]
        running_sum = columns[:, 0].copy()
        best_value = running_sum.max() - running_sum.min()
        best_mask = 0
        previous = 0
        for k in range(1, 2 ** (n - 1)):
            gray = k ^ (k >> 1)
            changed = gray ^ previous
            column = changed.bit_length()
            if gray & changed:
                running_sum = running_sum + columns[:, column]
            else:
                running_sum = running_sum - columns[:, column]
            value = running_sum.max() - running_sum.min()
            if value > best_value:
                best_value = value
                best_mask = gray
            previous = gray
        return best_value, best_mask

    @staticmethod
    def _mask_to_subset(mask, n):
        subset = [1]
        for bit in range(n - 1):
            if mask & (1 << bit):
                subset.append(bit + 2)
        return subset

    @staticmethod
    def _check_tolerance(tol):
        if tol is None or tol <= 0:
            raise ToleranceError(f"Tolerance must be positive, got {tol}")

    @staticmethod
    def _solve_rational(system, right_hand_side):
        # Gauss-Jordan elimination on Fractions
        n = len(system)
        rows = [list(system[i]) + [right_hand_side[i]] for i in range(n)]
        for column in range(n):
            pivots = list(filter(lambda x: rows[x][column] != 0, range(column, n)))
            if len(pivots) == 0:
                raise ConsensusLabError("The stationary vector is not unique")
            rows[column], rows[pivots[0]] = rows[pivots[0]], rows[column]
            pivot = rows[column][column]
            rows[column] = [value / pivot for value in rows[column]]
            for r in range(n):
                if r != column and rows[r][column] != 0:
                    factor = rows[r][column]
                    rows[r] = [a - factor * b for a, b in zip(rows[r], rows[column])]
        return [rows[i][n] for i in range(n)]

    ##########
    # Public #
    ##########

    @staticmethod
    def osc(x):
        values = list(x)
        if len(values) == 0:
            raise DimensionError("Oscillation of an empty vector")
        return max(values) - min(values)

    @classmethod
    def seminorm_realizer(cls, a):
        n = a.get_n()
        if n > cls.MAX_SEMINORM_DIMENSION:
            raise CapabilityError(f"Seminorm enumeration is limited to n <= "
                                  f"{cls.MAX_SEMINORM_DIMENSION} (n = {n}), use the lambda "
                                  f"coefficient from erg_coeffs as an upper bound")
        if a.is_rational():
            numerators, denominator = a.get_scaled_integers()
            value, mask = cls._max_subset_osc(numerators)
            value = Fraction(int(value), denominator)
        else:
            value, mask = cls._max_subset_osc(a.get_entries())
            value = float(value)
        return value, cls._mask_to_subset(mask, n)

    @classmethod
    def seminorm(cls, a):
        return cls.seminorm_realizer(a)[0]

    @staticmethod
    def erg_coeffs(a):
        entries = a.get_entries()
        delta = max(entries.max(axis=0) - entries.min(axis=0))
        overlaps = numpy.minimum(entries[:, None, :], entries[None, :, :]).sum(axis=2)
        lambda_coeff = 1 - overlaps.min()
        if not a.is_rational():
            return float(delta), float(lambda_coeff)
        return Fraction(delta), Fraction(lambda_coeff)

    @staticmethod
    def column_bound(a):
        value = 1 - a.get_entries().min(axis=0).sum()
        return Fraction(value) if a.is_rational() else float(value)

    @staticmethod
    def is_ergodic(a):
        graph = networkx.DiGraph()
        graph.add_nodes_from(range(a.get_n()))
        graph.add_edges_from(zip(*numpy.nonzero(a.get_pattern())))
        return networkx.is_strongly_connected(graph) and networkx.is_aperiodic(graph)

    @staticmethod
    def chain_product(seq):
        matrices = list(seq)
        if len(matrices) == 0:
            raise DimensionError("Product of an empty sequence")
        n = matrices[0].get_n()
        mismatches = list(filter(lambda x: x.get_n() != n, matrices))
        if len(mismatches) > 0:
            raise DimensionError(f"Dimension mismatch in product: {mismatches[0].get_n()} "
                                 f"instead of {n}")
        if len(matrices) == 1:
            return matrices[0]
        if any(map(lambda x: not x.is_rational(), matrices)):
            product = matrices[0].to_float().get_entries()
            for matrix in matrices[1:]:
                product = matrix.to_float().get_entries().dot(product)
            return StochasticMatrix(product, Scalar.MODE_FLOAT, validate=False)
        product, denominator = matrices[0].get_scaled_integers()
        for matrix in matrices[1:]:
            numerators, scale = matrix.get_scaled_integers()
            product = numerators.dot(product)
            denominator *= scale
        return StochasticMatrix.from_scaled_integers(product, denominator)

    @staticmethod
    def product_pattern(seq):
        """Positivity pattern of chain_product(seq), computed on booleans."""
        matrices = list(seq)
        if len(matrices) == 0:
            raise DimensionError("Product of an empty sequence")
        pattern = matrices[0].get_pattern().astype(numpy.int64)
        for matrix in matrices[1:]:
            pattern = (matrix.get_pattern().astype(numpy.int64).dot(pattern) > 0).astype(
                numpy.int64)
        return pattern > 0

    @staticmethod
    def same_pattern(a, b):
        return bool(numpy.array_equal(a.get_pattern(), b.get_pattern()))

    @classmethod
    def convergence_certificate(cls, seq, tol):
        cls._check_tolerance(tol)
        matrices = list(seq)
        if len(matrices) == 0:
            raise DimensionError("Certificate of an empty sequence")
        seminorms = []
        t_hit = None
        limit_row = None
        product = None
        for t, matrix in enumerate(matrices):
            product = matrix if product is None else cls.chain_product([product, matrix])
            value = cls.seminorm(product)
            seminorms.append(value)
            if t_hit is None and value < tol:
                t_hit = t
                limit_row = list(product.get_entries()[0])
        non_increasing = all(seminorms[i + 1] <= seminorms[i] for i in range(len(seminorms) - 1))
        return {
            cls.KEY_CONVERGED: t_hit is not None,
            cls.KEY_T_HIT: t_hit,
            cls.KEY_FINAL_SEMINORM: seminorms[-1],
            cls.KEY_LIMIT_ROW: limit_row,
            cls.KEY_NON_INCREASING: non_increasing,
            cls.KEY_SEMINORMS: seminorms
        }

    @classmethod
    def wolfowitz_contraction(cls, matrices, cap=None):
        matrices = list(matrices)
        if len(matrices) == 0:
            raise DimensionError("Empty matrix set")
        n = matrices[0].get_n()
        if any(map(lambda x: x.get_n() != n, matrices)):
            raise DimensionError("All matrices in the set must have the same dimension")
        if cap is None:
            cap = cls.DEFAULT_ENUMERATION_CAP
        length = n * n + 1
        count = len(matrices) ** length
        if count > cap:
            raise EnumerationCapError(f"{len(matrices)}^{length} = {count} products exceed the "
                                      f"enumeration cap of {cap}")
        max_seminorm = None
        witness = None
        non_ergodic_witness = None
        patterns = set()
        for sequence in itertools.product(range(len(matrices)), repeat=length):
            product = cls.chain_product([matrices[k] for k in sequence])
            patterns.add(product.get_pattern().tobytes())
            if non_ergodic_witness is None and not cls.is_ergodic(product):
                non_ergodic_witness = list(sequence)
            value = cls.seminorm(product)
            if max_seminorm is None or value > max_seminorm:
                max_seminorm = value
                witness = list(sequence)
        return {
            cls.KEY_MAX_SEMINORM: max_seminorm,
            cls.KEY_WITNESS: witness,
            cls.KEY_PRODUCT_LENGTH: length,
            cls.KEY_PRODUCTS: count,
            cls.KEY_ALL_ERGODIC: non_ergodic_witness is None,
            cls.KEY_NON_ERGODIC_WITNESS: non_ergodic_witness,
            cls.KEY_DISTINCT_PATTERNS: len(patterns)
        }

    @classmethod
    def stationary_vector(cls, a):
        """Solves pi A = pi with entries of pi summing to one. This is a linear solve, not an
        eigenvalue computation; the solution is unique when A is ergodic."""
        n = a.get_n()
        entries = a.get_entries()
        if a.is_rational():
            system = [[(entries[j, i] - (1 if i == j else 0)) for j in range(n)]
                      for i in range(n)]
            system[n - 1] = [Fraction(1)] * n
            right_hand_side = [Fraction(0)] * (n - 1) + [Fraction(1)]
            return cls._solve_rational(system, right_hand_side)
        system = entries.T - numpy.eye(n)
        system[n - 1, :] = 1.0
        right_hand_side = numpy.zeros(n)
        right_hand_side[n - 1] = 1.0
        try:
            return list(map(float, numpy.linalg.solve(system, right_hand_side)))
        except numpy.linalg.LinAlgError as e:
            raise ConsensusLabError("The stationary vector is not unique") from e


if __name__ == "__main__":

    from tests.unit_tests.test_models.test_matrix_core import TestMatrixCore

    TestMatrixCore().run(True)

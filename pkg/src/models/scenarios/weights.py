"""
Row weights for generated graphs.

Random weights live on the grid 1/Q with Q = 4 * denominator(alpha): each positive entry starts
at alpha and the remaining units are spread with a multinomial draw. All entries are exact.
"""

import math

from fractions import Fraction

from src.models.errors import ScenarioError
from src.models.scalar import Scalar
from src.models.stochastic_matrix import StochasticMatrix


class Weights:

    GRID_FACTOR = 4

    def __init__(self):
        raise RuntimeError("No instance of this class is permitted")

    ##########
    # Public #
    ##########

    @staticmethod
    def max_degree(alpha):
        return math.floor(1 / alpha)

    @classmethod
    def random_row(cls, rng, neighbors, n, alpha):
        neighbors = sorted(neighbors)
        if len(neighbors) * alpha > 1:
            raise ScenarioError(f"Alpha {Scalar.to_text(alpha)} is too large for a row with "
                                f"{len(neighbors)} positive entries")
        grid = alpha.denominator * cls.GRID_FACTOR
        base = alpha.numerator * cls.GRID_FACTOR
        extra = grid - base * len(neighbors)
        shares = rng.multinomial(extra, [1 / len(neighbors)] * len(neighbors))
        row = [Fraction(0)] * n
        for k, share in zip(neighbors, shares):
            row[k - 1] = Fraction(base + int(share), grid)
        return row

    @staticmethod
    def equal_row(neighbors, n):
        row = [Fraction(0)] * n
        for k in neighbors:
            row[k - 1] = Fraction(1, len(neighbors))
        return row

    @classmethod
    def random_matrix(cls, rng, graph, alpha):
        n = len(graph)
        rows = [cls.random_row(rng, graph[i], n, alpha) for i in range(1, n + 1)]
        return StochasticMatrix(rows, Scalar.MODE_RATIONAL, alpha)

    @classmethod
    def equal_matrix(cls, graph, alpha=None):
        n = len(graph)
        return StochasticMatrix([cls.equal_row(graph[i], n) for i in range(1, n + 1)],
                                Scalar.MODE_RATIONAL, alpha)


if __name__ == "__main__":

    from tests.unit_tests.test_models.test_weights import TestWeights

    TestWeights().run(True)

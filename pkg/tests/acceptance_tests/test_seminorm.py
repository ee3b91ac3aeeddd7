"""
Seminorm of random stochastic matrices against the ergodicity coefficients, the maximizing subsets
and sub-multiplicativity, all in exact arithmetic.
"""

import numpy

from src.models.matrix_core import MatrixCore
from tests.test_environment.test_traces import random_matrix
from tests.unit_tests.lib.test_suite import TestSuite


class TestSeminorm(TestSuite):

    _COUNT = 1000
    _DENSITIES = [0.1, 0.3, 0.6, 1.1]

    def _matrices(self, seed):
        rng = numpy.random.default_rng(seed)
        for k in range(self._COUNT):
            yield random_matrix(rng, 2 + k % 7, density=self._DENSITIES[k % 4])

    @staticmethod
    def _subset_osc(a, columns):
        entries = a.get_entries()
        return MatrixCore.osc([sum(entries[i, j - 1] for j in columns)
                               for i in range(a.get_n())])

    def test_sandwich(self):
        full_lambda = 0
        for k, a in enumerate(self._matrices(1)):
            value = MatrixCore.seminorm(a)
            delta, lambda_coeff = MatrixCore.erg_coeffs(a)
            self.fail_if(not delta <= value <= lambda_coeff,
                         f"Matrix {k}: {delta} <= {value} <= {lambda_coeff} fails")
            self.fail_if((lambda_coeff == 1) != (value == 1),
                         f"Matrix {k}: lambda = {lambda_coeff}, seminorm = {value}")
            if lambda_coeff == 1:
                full_lambda += 1
        self.fail_if(full_lambda == 0, "No matrix with lambda = 1 in the sample")
        self.log.debug(f"{full_lambda} of {self._COUNT} matrices have lambda = 1")

    def test_realizer(self):
        for k, a in enumerate(self._matrices(2)):
            value, subset = MatrixCore.seminorm_realizer(a)
            complement = [j for j in range(1, a.get_n() + 1) if j not in subset]
            self.fail_if(self._subset_osc(a, subset) != value,
                         f"Matrix {k}: subset {subset} does not give {value}")
            self.fail_if(self._subset_osc(a, complement) != value,
                         f"Matrix {k}: complement {complement} does not give {value}")

    def test_sub_multiplicative(self):
        rng = numpy.random.default_rng(3)
        for k in range(self._COUNT):
            n = 2 + k % 7
            a = random_matrix(rng, n, density=self._DENSITIES[k % 4])
            b = random_matrix(rng, n, density=self._DENSITIES[(k + 1) % 4])
            product = MatrixCore.chain_product([a, b])
            self.fail_if(MatrixCore.seminorm(product) >
                         MatrixCore.seminorm(a) * MatrixCore.seminorm(b),
                         f"Pair {k}: seminorm of the product exceeds the product of seminorms")


if __name__ == "__main__":

    TestSeminorm().run(True)

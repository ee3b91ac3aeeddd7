"""
Two-periodic traces where single steps fail a condition that products of two steps satisfy.

chain: n = 3, G(t) is never oriented, but every product A(t + 1) A(t) has an oriented graph.
pair:  n = 2, G(t) is never completely reducible, but every product of two steps is positive.
"""

from fractions import Fraction

from src.models.errors import ScenarioError
from src.models.monitors import Monitors
from src.models.scalar import Scalar
from src.models.scenarios.scenario_generator import ScenarioGenerator
from src.models.stochastic_matrix import StochasticMatrix


HALF = Fraction(1, 2)

CHAIN_EVEN = [[1, 0, 0], [HALF, HALF, 0], [0, 0, 1]]
CHAIN_ODD = [[1, 0, 0], [0, 1, 0], [0, HALF, HALF]]

PAIR_EVEN = [[1, 0], [HALF, HALF]]
PAIR_ODD = [[HALF, HALF], [0, 1]]


def _alternating(spec, n, even_rows, odd_rows):
    if spec.get_n() != n:
        raise ScenarioError(f"This construction has n = {n}, got n = {spec.get_n()}")
    even = StochasticMatrix(even_rows, Scalar.MODE_RATIONAL, HALF)
    odd = StochasticMatrix(odd_rows, Scalar.MODE_RATIONAL, HALF)
    return [even if t % 2 == 0 else odd for t in range(spec.get_horizon())], HALF, 2


def _monitors(trace, kind):
    if trace.get_horizon() < 2:
        return []
    return [Monitors.check_diamond(trace, kind, 0, 2)]


granular_chain = ScenarioGenerator({
    "name": "granular_chain",
    "info": "Alternates 2 hears 1 and 3 hears 2, oriented only over two steps",
    "build": lambda spec, rng, options: _alternating(spec, 3, CHAIN_EVEN, CHAIN_ODD),
    "monitors": lambda x: _monitors(x, Monitors.KIND_C)
})

granular_pair = ScenarioGenerator({
    "name": "granular_pair",
    "info": "Alternates 2 hears 1 and 1 hears 2, completely reducible only over two steps",
    "build": lambda spec, rng, options: _alternating(spec, 2, PAIR_EVEN, PAIR_ODD),
    "monitors": lambda x: _monitors(x, Monitors.KIND_D2)
})


if __name__ == "__main__":

    from tests.unit_tests.test_models.test_scenarios import TestScenarios

    TestScenarios().run(True)

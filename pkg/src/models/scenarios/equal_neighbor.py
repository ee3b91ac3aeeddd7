"""
Equal-neighbor family: oriented graphs, every agent takes the plain average of the agents it hears
of (itself included). The declared alpha is 1/n.
"""

from fractions import Fraction

from src.models.monitors import Monitors
from src.models.scenarios.graph_builder import GraphBuilder
from src.models.scenarios.scenario_generator import ScenarioGenerator
from src.models.scenarios.weights import Weights


KEY_COMPLETE = "complete"
KEY_EXTRA_EDGES = "extra_edges"


def _build(spec, rng, options):
    n = spec.get_n()
    alpha = Fraction(1, n)
    matrices = []
    for _ in range(spec.get_horizon()):
        graph = GraphBuilder.empty(n)
        if options[KEY_COMPLETE]:
            graph = {i: set(range(1, n + 1)) for i in range(1, n + 1)}
        else:
            GraphBuilder.add_in_tree(rng, graph, graph.keys(), int(rng.integers(1, n + 1)))
            GraphBuilder.add_extra_edges(rng, graph, graph.keys(), options[KEY_EXTRA_EDGES], n)
        matrices.append(Weights.equal_matrix(graph, alpha))
    return matrices, alpha, None


equal_neighbor = ScenarioGenerator({
    "name": "equal_neighbor",
    "info": "Oriented graphs with equal weights 1/deg(i) in row i",
    "options": {
        KEY_COMPLETE: False,
        KEY_EXTRA_EDGES: 0.3
    },
    "build": _build,
    "monitors": lambda x: [Monitors.check_c(x)]
})


if __name__ == "__main__":

    from tests.unit_tests.test_models.test_scenarios import TestScenarios

    TestScenarios().run(True)

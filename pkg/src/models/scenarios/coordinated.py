"""
Coordinated family: every G(t) is oriented. Each step draws a coordinator j(t), builds a random
in-tree toward it and adds self-loops and random extra edges.
"""

from src.models.errors import ScenarioError
from src.models.monitors import Monitors
from src.models.scenarios.graph_builder import GraphBuilder
from src.models.scenarios.scenario_generator import ScenarioGenerator
from src.models.scenarios.weights import Weights


KEY_COORDINATORS = "coordinators"
KEY_EXTRA_EDGES = "extra_edges"


def _build(spec, rng, options):
    n = spec.get_n()
    alpha = spec.get_alpha()
    max_degree = Weights.max_degree(alpha)
    if n > 1 and max_degree < 2:
        raise ScenarioError(f"Alpha {alpha} is too large: an in-tree needs two positive entries "
                            f"in a row")
    coordinators = options[KEY_COORDINATORS]
    if coordinators is not None:
        if len(coordinators) == 0 or any(map(lambda x: not 1 <= x <= n, coordinators)):
            raise ScenarioError(f"Invalid coordinator list: {coordinators}")
    matrices = []
    for t in range(spec.get_horizon()):
        if coordinators is None:
            j = int(rng.integers(1, n + 1))
        else:
            j = coordinators[t % len(coordinators)]
        graph = GraphBuilder.empty(n)
        GraphBuilder.add_in_tree(rng, graph, graph.keys(), j)
        GraphBuilder.add_extra_edges(rng, graph, graph.keys(), options[KEY_EXTRA_EDGES],
                                     max_degree)
        matrices.append(Weights.random_matrix(rng, graph, alpha))
    return matrices, alpha, None


coordinated = ScenarioGenerator({
    "name": "coordinated",
    "info": "Random in-tree toward a coordinator j(t) at every step, plus self-loops and extra "
            "edges",
    "options": {
        KEY_COORDINATORS: None,
        KEY_EXTRA_EDGES: 0.3
    },
    "build": _build,
    "monitors": lambda x: [Monitors.check_c(x)]
})


if __name__ == "__main__":

    from tests.unit_tests.test_models.test_scenarios import TestScenarios

    TestScenarios().run(True)

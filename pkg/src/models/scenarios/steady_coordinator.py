"""
Traces with a fixed agent j0: at every step the component of j0 is an in-tree toward j0 and all
other components are directed cycles. The last step of every window of W steps puts all agents in
the component of j0, so every window union is j0-oriented.
"""

from src.models.errors import ScenarioError
from src.models.monitors import Monitors
from src.models.scenario_trace import ScenarioTrace
from src.models.scenarios.graph_builder import GraphBuilder
from src.models.scenarios.scenario_generator import ScenarioGenerator
from src.models.scenarios.weights import Weights


KEY_CHORDS = "chords"
KEY_J0 = "j0"
KEY_WINDOW = "window"


def _build(spec, rng, options):
    n = spec.get_n()
    alpha = spec.get_alpha()
    j0 = options[KEY_J0]
    window = options[KEY_WINDOW]
    max_degree = Weights.max_degree(alpha)
    if not 1 <= j0 <= n:
        raise ScenarioError(f"Agent j0 = {j0} is not in 1..{n}")
    if window < 1:
        raise ScenarioError(f"Window must be at least 1, got {window}")
    if n > 1 and max_degree < 2:
        raise ScenarioError(f"Alpha {alpha} is too large: two positive entries per row needed")
    nodes = list(range(1, n + 1))
    others = [node for node in nodes if node != j0]
    matrices = []
    for t in range(spec.get_horizon()):
        graph = GraphBuilder.empty(n)
        if window == 1 or t % window == window - 1:
            block = nodes
            rest = []
        else:
            size = int(rng.integers(0, len(others) + 1))
            chosen = list(map(int, rng.permutation(others)[:size])) if size > 0 else []
            block = sorted([j0] + chosen)
            rest = sorted(set(others) - set(chosen))
        GraphBuilder.add_in_tree(rng, graph, block, j0)
        GraphBuilder.add_extra_edges(rng, graph, block, options[KEY_CHORDS], max_degree)
        if len(rest) > 0:
            blocks = int(rng.integers(1, max(1, len(rest) // 2) + 1))
            for cycle in GraphBuilder.random_partition(rng, rest, blocks):
                GraphBuilder.add_cycle(rng, graph, cycle)
        matrices.append(Weights.random_matrix(rng, graph, alpha))
    return matrices, alpha, None


def _monitors(trace):
    window = trace.get_metadata()[ScenarioTrace.KEY_OPTIONS][KEY_WINDOW]
    if trace.get_horizon() >= window:
        return [Monitors.check_dstar(trace)]
    return []


steady_coordinator = ScenarioGenerator({
    "name": "steady_coordinator",
    "info": "Fixed agent j0 whose component is a j0-oriented in-tree, other components are cycles",
    "options": {
        KEY_CHORDS: 0.3,
        KEY_J0: 1,
        KEY_WINDOW: 3
    },
    "build": _build,
    "monitors": _monitors
})


if __name__ == "__main__":

    from tests.unit_tests.test_models.test_scenarios import TestScenarios

    TestScenarios().run(True)

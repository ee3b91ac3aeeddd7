"""
Decentralized family: every G(t) is a disjoint union of strongly connected blocks (a directed
cycle through the block plus self-loops and chords). The last step of every window of W steps
joins one node of each component of the window union so far, which makes every window union
strongly connected.
"""

from src.models.digraph import Digraph
from src.models.errors import ScenarioError
from src.models.graph_analysis import GraphAnalysis
from src.models.monitors import Monitors
from src.models.scenario_trace import ScenarioTrace
from src.models.scenarios.graph_builder import GraphBuilder
from src.models.scenarios.scenario_generator import ScenarioGenerator
from src.models.scenarios.weights import Weights


KEY_BLOCKS = "blocks"
KEY_CHORDS = "chords"
KEY_SYMMETRIC = "symmetric"
KEY_WINDOW = "window"


def _partition(rng, n, graphs, t, options):
    nodes = list(range(1, n + 1))
    window = options[KEY_WINDOW]
    max_blocks = options[KEY_BLOCKS] if options[KEY_BLOCKS] is not None else max(1, n // 2)
    if window == 1:
        return [nodes]
    if t % window == window - 1:
        edges = set()
        for graph in graphs[t - window + 1:t]:
            edges.update(GraphBuilder.to_edges(graph))
        components = GraphAnalysis.weak_components(Digraph(n, edges))
        if len(components) > 1:
            representatives = sorted(map(min, components))
            rest = sorted(set(nodes) - set(representatives))
            blocks = [representatives]
            if len(rest) > 0:
                blocks.extend(GraphBuilder.random_partition(
                    rng, rest, int(rng.integers(1, max_blocks + 1))))
            return blocks
    if options[KEY_BLOCKS] is not None:
        return GraphBuilder.random_partition(rng, nodes, max_blocks)
    return GraphBuilder.random_partition(rng, nodes, int(rng.integers(1, max_blocks + 1)))


def _build(spec, rng, options):
    n = spec.get_n()
    alpha = spec.get_alpha()
    max_degree = Weights.max_degree(alpha)
    symmetric = options[KEY_SYMMETRIC]
    if n > 1 and max_degree < 2:
        raise ScenarioError(f"Alpha {alpha} is too large: a cycle needs two positive entries "
                            f"in a row")
    if symmetric and n > 2 and max_degree < 3:
        raise ScenarioError(f"Alpha {alpha} is too large: a symmetric cycle needs three positive "
                            f"entries in a row")
    if options[KEY_WINDOW] < 1:
        raise ScenarioError(f"Window must be at least 1, got {options[KEY_WINDOW]}")
    graphs = []
    matrices = []
    for t in range(spec.get_horizon()):
        graph = GraphBuilder.empty(n)
        for block in _partition(rng, n, graphs, t, options):
            GraphBuilder.add_cycle(rng, graph, block, symmetric)
            GraphBuilder.add_extra_edges(rng, graph, block, options[KEY_CHORDS], max_degree,
                                         symmetric)
        graphs.append(graph)
        matrices.append(Weights.random_matrix(rng, graph, alpha))
    return matrices, alpha, None


def _monitors(trace):
    reports = [Monitors.check_d2(trace)]
    window = trace.get_metadata()[ScenarioTrace.KEY_OPTIONS][KEY_WINDOW]
    if trace.get_horizon() >= window:
        reports.append(Monitors.check_d1(trace))
    return reports


decentralized = ScenarioGenerator({
    "name": "decentralized",
    "info": "Random partitions into strongly connected blocks, window unions strongly connected",
    "options": {
        KEY_BLOCKS: None,
        KEY_CHORDS: 0.3,
        KEY_SYMMETRIC: False,
        KEY_WINDOW: 3
    },
    "build": _build,
    "monitors": _monitors
})


if __name__ == "__main__":

    from tests.unit_tests.test_models.test_scenarios import TestScenarios

    TestScenarios().run(True)

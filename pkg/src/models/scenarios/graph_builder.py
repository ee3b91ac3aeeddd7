"""
Random graph pieces for the generators. A graph is a dict: node -> set of nodes it hears of,
nodes numbered 1..n. Every node hears of itself.
"""

from src.models.errors import ScenarioError


class GraphBuilder:

    def __init__(self):
        raise RuntimeError("No instance of this class is permitted")

    ##########
    # Public #
    ##########

    @staticmethod
    def empty(n):
        return {i: {i} for i in range(1, n + 1)}

    @staticmethod
    def random_partition(rng, nodes, blocks):
        nodes = list(rng.permutation(sorted(nodes)))
        blocks = max(1, min(blocks, len(nodes)))
        cuts = []
        if blocks > 1:
            cuts = sorted(int(x) + 1 for x in rng.choice(len(nodes) - 1, size=blocks - 1,
                                                         replace=False))
        bounds = [0] + list(cuts) + [len(nodes)]
        return [sorted(map(int, nodes[bounds[k]:bounds[k + 1]])) for k in range(blocks)]

    @staticmethod
    def add_in_tree(rng, graph, nodes, root):
        """Every node of nodes gets a path to root: each node hears of a node placed before it."""
        others = list(map(int, rng.permutation(sorted(set(nodes) - {root}))))
        placed = [root]
        for node in others:
            graph[node].add(placed[int(rng.integers(len(placed)))])
            placed.append(node)

    @staticmethod
    def add_cycle(rng, graph, nodes, symmetric=False):
        order = list(map(int, rng.permutation(sorted(nodes))))
        if len(order) < 2:
            return
        for k, node in enumerate(order):
            successor = order[(k + 1) % len(order)]
            graph[node].add(successor)
            if symmetric:
                graph[successor].add(node)

    @staticmethod
    def add_extra_edges(rng, graph, nodes, probability, max_degree, symmetric=False):
        nodes = sorted(nodes)
        for i in nodes:
            for k in nodes:
                if k in graph[i] or rng.random() >= probability:
                    continue
                if len(graph[i]) >= max_degree:
                    continue
                if symmetric:
                    if len(graph[k]) >= max_degree:
                        continue
                    graph[k].add(i)
                graph[i].add(k)

    @staticmethod
    def check_degree(graph, max_degree):
        for i, neighbors in graph.items():
            if len(neighbors) > max_degree:
                raise ScenarioError(f"Alpha is too large: agent {i} needs {len(neighbors)} "
                                    f"positive entries, at most {max_degree} fit in a row")

    @staticmethod
    def to_edges(graph):
        return sorted((i, k) for i, neighbors in graph.items() for k in neighbors)


if __name__ == "__main__":

    from tests.unit_tests.test_models.test_graph_builder import TestGraphBuilder

    TestGraphBuilder().run(True)

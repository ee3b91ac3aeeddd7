"""
Communication graph on the nodes 1..n. Edge (i, j) means "i hears of j", i.e. A_ij > 0.
"""

import networkx

from src.models.errors import DimensionError


class Digraph:

    KEY_EDGES = "edges"
    KEY_N = "n"

    def __init__(self, n, edges=()):
        if n < 1:
            raise DimensionError(f"A graph needs at least one node, got n = {n}")
        self._n = int(n)
        self._edges = frozenset(map(lambda x: (int(x[0]), int(x[1])), edges))
        outside = list(filter(lambda x: not (1 <= x[0] <= self._n and 1 <= x[1] <= self._n),
                              self._edges))
        if len(outside) > 0:
            raise DimensionError(f"Edge {outside[0]} is outside the nodes 1..{self._n}")
        self._graph = networkx.DiGraph()
        self._graph.add_nodes_from(range(1, self._n + 1))
        self._graph.add_edges_from(self._edges)

    def __eq__(self, other):
        if not isinstance(other, Digraph):
            return NotImplemented
        return self._n == other.get_n() and self._edges == other.get_edge_set()

    def __hash__(self):
        return hash((self._n, self._edges))

    def __repr__(self):
        return f"Digraph(n={self._n}, edges={self.get_edges()})"

    ##########
    # Public #
    ##########

    def get_n(self):
        return self._n

    def get_nodes(self):
        return list(range(1, self._n + 1))

    def get_edges(self):
        return sorted(self._edges)

    def get_edge_set(self):
        return self._edges

    def has_edge(self, i, j):
        return (i, j) in self._edges

    def get_networkx(self):
        # Shared instance, callers must not modify it
        return self._graph

    def to_dict(self):
        return {
            self.KEY_N: self._n,
            self.KEY_EDGES: list(map(list, self.get_edges()))
        }

    @classmethod
    def from_dict(cls, d):
        return cls(d[cls.KEY_N], map(tuple, d.get(cls.KEY_EDGES, [])))

    @classmethod
    def from_pattern(cls, pattern):
        n = len(pattern)
        return cls(n, [(i + 1, j + 1) for i in range(n) for j in range(n) if pattern[i][j]])


if __name__ == "__main__":

    from tests.unit_tests.test_models.test_digraph import TestDigraph

    TestDigraph().run(True)

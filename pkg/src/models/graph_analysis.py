"""
Structure queries on communication graphs: strongly connected components, condensation,
orientation, complete reducibility and property P_j.

"Connected component" always means a component of the undirected version of the graph
(weak_components), never a strongly connected component (scc).
"""

import networkx

from src.models.digraph import Digraph
from src.models.errors import CapabilityError
from src.models.errors import ConsensusLabError
from src.models.errors import DimensionError
from src.models.matrix_core import MatrixCore


class Condensation:

    KEY_COMPONENTS = "components"
    KEY_DAG_EDGES = "dag_edges"

    def __init__(self, components, dag_edges):
        # Components are indexed 1..k in the given order
        self._components = list(map(frozenset, components))
        self._dag_edges = frozenset(dag_edges)
        self._index = {}
        for index, component in enumerate(self._components, 1):
            for node in component:
                self._index[node] = index

    def get_size(self):
        return len(self._components)

    def get_components(self):
        return list(self._components)

    def get_dag_edges(self):
        return sorted(self._dag_edges)

    def component_of(self, node):
        if node not in self._index:
            raise DimensionError(f"Node {node} is not in the condensed graph")
        return self._index[node]

    def as_digraph(self):
        return Digraph(len(self._components), self._dag_edges)

    def to_dict(self):
        return {
            self.KEY_COMPONENTS: [sorted(component) for component in self._components],
            self.KEY_DAG_EDGES: list(map(list, self.get_dag_edges()))
        }


class GraphAnalysis:

    METHOD_BRUTEFORCE = "bruteforce"
    METHOD_STRUCTURAL = "structural"

    MAX_BRUTEFORCE_DIMENSION = 20

    def __init__(self):
        raise RuntimeError("No instance of this class is permitted")

    ###########
    # Private #
    ###########

    @staticmethod
    def _check_node(g, j):
        if not 1 <= j <= g.get_n():
            raise DimensionError(f"Node {j} out of range 1..{g.get_n()}")

    @staticmethod
    def _sorted_components(components):
        return sorted(map(frozenset, components), key=min)

    @classmethod
    def _satisfies_pj_bruteforce(cls, g, j0):
        n = g.get_n()
        if n > cls.MAX_BRUTEFORCE_DIMENSION:
            raise CapabilityError(f"Brute force P_j check is limited to n <= "
                                  f"{cls.MAX_BRUTEFORCE_DIMENSION} (n = {n})")
        successors = [0] * n
        for i, k in g.get_edges():
            successors[i - 1] |= 1 << (k - 1)
        everything = (1 << n) - 1
        j0_bit = 1 << (j0 - 1)
        others = [node for node in range(n) if node != j0 - 1]
        for k in range(2 ** (n - 1)):
            subset = j0_bit
            for position, node in enumerate(others):
                if k & (1 << position):
                    subset |= 1 << node
            outside = everything & ~subset
            has_outgoing = any(successors[node] & outside
                               for node in range(n) if subset & (1 << node))
            has_incoming = any(successors[node] & subset
                               for node in range(n) if outside & (1 << node))
            if has_outgoing and not has_incoming:
                return False
        return True

    @classmethod
    def _satisfies_pj_structural(cls, g, j0):
        for component in cls.weak_components(g):
            subgraph = cls.induced(g, component)
            if j0 in component:
                if not cls.is_j_oriented(subgraph, sorted(component).index(j0) + 1):
                    return False
            elif not cls.is_strongly_connected(subgraph):
                return False
        return True

    ##########
    # Public #
    ##########

    @staticmethod
    def comm_graph(a):
        return Digraph.from_pattern(a.get_pattern())

    @staticmethod
    def product_graph(matrices):
        """Communication graph of the product of the matrices, latest matrix on the left."""
        return Digraph.from_pattern(MatrixCore.product_pattern(matrices))

    @staticmethod
    def union(graphs):
        graphs = list(graphs)
        if len(graphs) == 0:
            raise DimensionError("Union of no graphs")
        edges = set()
        for graph in graphs:
            edges.update(graph.get_edge_set())
        return Digraph(graphs[0].get_n(), edges)

    @staticmethod
    def induced(g, nodes):
        nodes = sorted(nodes)
        positions = {node: position for position, node in enumerate(nodes, 1)}
        return Digraph(len(nodes), [(positions[i], positions[k]) for i, k in g.get_edges()
                                    if i in positions and k in positions])

    @classmethod
    def scc(cls, g):
        return cls._sorted_components(networkx.strongly_connected_components(g.get_networkx()))

    @classmethod
    def weak_components(cls, g):
        return cls._sorted_components(networkx.weakly_connected_components(g.get_networkx()))

    @staticmethod
    def is_strongly_connected(g):
        return networkx.is_strongly_connected(g.get_networkx())

    @classmethod
    def scc_condense(cls, g):
        components = cls.scc(g)
        index = {}
        for position, component in enumerate(components, 1):
            for node in component:
                index[node] = position
        dag_edges = set((index[i], index[k]) for i, k in g.get_edges() if index[i] != index[k])
        return Condensation(components, dag_edges)

    @classmethod
    def is_j_oriented(cls, g, j):
        cls._check_node(g, j)
        return len(networkx.ancestors(g.get_networkx(), j)) == g.get_n() - 1

    @classmethod
    def is_oriented(cls, g):
        return next(filter(lambda x: cls.is_j_oriented(g, x), g.get_nodes()), None)

    @classmethod
    def is_completely_reducible(cls, g):
        # Every weak component is strongly connected iff both partitions coincide
        return cls.scc(g) == cls.weak_components(g)

    @classmethod
    def satisfies_pj(cls, g, j0, method=METHOD_STRUCTURAL):
        cls._check_node(g, j0)
        if method == cls.METHOD_BRUTEFORCE:
            return cls._satisfies_pj_bruteforce(g, j0)
        if method == cls.METHOD_STRUCTURAL:
            return cls._satisfies_pj_structural(g, j0)
        raise ConsensusLabError(f"Unknown method '{method}'")

    @staticmethod
    def sinks(g):
        return set(filter(lambda x: all(k == x for k in g.get_networkx().successors(x)),
                          g.get_nodes()))


if __name__ == "__main__":

    from tests.unit_tests.test_models.test_graph_analysis import TestGraphAnalysis

    TestGraphAnalysis().run(True)

"""
Test the random graph pieces of the generators.
"""

import numpy

from src.models.digraph import Digraph
from src.models.errors import ScenarioError
from src.models.graph_analysis import GraphAnalysis
from src.models.scenarios.graph_builder import GraphBuilder
from tests.unit_tests.lib.test_suite import TestSuite


class TestGraphBuilder(TestSuite):

    @staticmethod
    def _to_digraph(graph):
        return Digraph(len(graph), GraphBuilder.to_edges(graph))

    def test_empty(self):
        graph = GraphBuilder.empty(3)
        self.fail_if(graph != {1: {1}, 2: {2}, 3: {3}}, f"Empty graph is {graph}")
        self.fail_if(GraphBuilder.to_edges(graph) != [(1, 1), (2, 2), (3, 3)], "Edges incorrect")

    def test_random_partition(self):
        rng = numpy.random.default_rng(1)
        nodes = [2, 3, 5, 7, 8]
        for blocks in range(1, 7):
            partition = GraphBuilder.random_partition(rng, nodes, blocks)
            self.fail_if(len(partition) != min(blocks, len(nodes)),
                         f"Number of blocks is {len(partition)} for {blocks}")
            self.fail_if(sorted(sum(partition, [])) != nodes, "Partition does not cover the nodes")
            self.fail_if(any(len(block) == 0 for block in partition), "Empty block")

    def test_in_tree(self):
        rng = numpy.random.default_rng(2)
        for root in range(1, 6):
            graph = GraphBuilder.empty(5)
            GraphBuilder.add_in_tree(rng, graph, graph.keys(), root)
            g = self._to_digraph(graph)
            self.fail_if(not GraphAnalysis.is_j_oriented(g, root), f"Tree is not {root}-oriented")
            self.fail_if(len(g.get_edges()) != 9, "In-tree does not add one edge per node")

    def test_cycle(self):
        rng = numpy.random.default_rng(3)
        graph = GraphBuilder.empty(6)
        GraphBuilder.add_cycle(rng, graph, [1, 2, 3, 4])
        GraphBuilder.add_cycle(rng, graph, [5])
        g = self._to_digraph(graph)
        block = GraphAnalysis.induced(g, {1, 2, 3, 4})
        self.fail_if(not GraphAnalysis.is_strongly_connected(block),
                     "Cycle block is not strongly connected")
        self.fail_if(graph[5] != {5} or graph[6] != {6}, "Nodes outside the cycles changed")
        graph = GraphBuilder.empty(4)
        GraphBuilder.add_cycle(rng, graph, [1, 2, 3, 4], symmetric=True)
        self.fail_if(any(len(graph[i]) != 3 for i in graph), "Symmetric cycle degrees incorrect")

    def test_extra_edges(self):
        rng = numpy.random.default_rng(4)
        graph = GraphBuilder.empty(6)
        GraphBuilder.add_extra_edges(rng, graph, graph.keys(), 1.0, 3)
        self.fail_if(any(len(graph[i]) != 3 for i in graph), "Degree bound not filled")
        GraphBuilder.check_degree(graph, 3)
        try:
            GraphBuilder.check_degree(graph, 2)
            self.fail("Degree above the bound was accepted")
        except ScenarioError as e:
            self.log.debug(f"Error message: {e}")

    def test_extra_edges_none(self):
        rng = numpy.random.default_rng(5)
        graph = GraphBuilder.empty(4)
        GraphBuilder.add_extra_edges(rng, graph, graph.keys(), 0.0, 4)
        self.fail_if(graph != GraphBuilder.empty(4), "Edges added with probability 0")


if __name__ == "__main__":

    TestGraphBuilder().run(True)

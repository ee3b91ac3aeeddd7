"""
Test the seeded generator families and the scenario registry.
"""

from fractions import Fraction

from src.models.errors import ScenarioError
from src.models.graph_analysis import GraphAnalysis
from src.models.monitors import Monitors
from src.models.scalar import Scalar
from src.models.scenarios import Scenarios
from src.models.scenarios.delays import Delays
from src.models.scenarios.generator_spec import GeneratorSpec
from src.models.trace_file import TraceFile
from tests.unit_tests.lib.test_suite import TestSuite


class TestScenarios(TestSuite):

    def test_generator_names(self):
        expected = ["coordinated", "decentralized", "equal_neighbor", "granular_chain",
                    "granular_pair", "steady_coordinator"]
        self.fail_if(Scenarios.get_generator_names() != expected, "Generator names incorrect")
        self.fail_if(Scenarios.get_generator_by_name("random") is not None, "Unknown name found")
        for name in expected:
            self.fail_if(Scenarios.get_generator_by_name(name).get_info() == "no info",
                         f"Generator {name} has no info")

    def test_coordinated(self):
        for seed in range(3):
            trace = Scenarios.gen_coordinated(GeneratorSpec("coordinated", 5, horizon=20,
                                                            seed=seed))
            self.fail_if(not Monitors.check_c(trace).holds(), f"C fails for seed {seed}")
            self.fail_if(trace.get_alpha() != Fraction(1, 5), "Alpha is not the declared one")
            self.fail_if(trace.get_family() != "coordinated" or trace.get_seed() != seed,
                         "Metadata incorrect")

    def test_coordinated_fixed(self):
        spec = GeneratorSpec("coordinated", 4, horizon=10, seed=4, options={"coordinators": [2]})
        trace = Scenarios.generate(spec)
        for t, graph in enumerate(trace.get_graphs()):
            self.fail_if(not GraphAnalysis.is_j_oriented(graph, 2), f"G({t}) is not 2-oriented")

    def test_decentralized(self):
        for symmetric in [False, True]:
            spec = GeneratorSpec("decentralized", 6, horizon=12, seed=5,
                                 options={"symmetric": symmetric})
            trace = Scenarios.gen_decentralized(spec)
            self.fail_if(not Monitors.check_d2(trace).holds(), "D2 fails")
            self.fail_if(not Monitors.check_d1(trace).holds(), "D1 fails")

    def test_equal_neighbor(self):
        trace = Scenarios.gen_equal_neighbor(GeneratorSpec("equal_neighbor", 4, horizon=10,
                                                           seed=6))
        self.fail_if(trace.get_alpha() != Fraction(1, 4), "Alpha is not 1/n")
        for matrix in trace.get_matrices():
            for row in matrix.get_entries():
                positive = list(filter(lambda x: x > 0, row))
                self.fail_if(len(set(positive)) != 1, f"Row {row} has unequal weights")
        trace = Scenarios.generate(GeneratorSpec("equal_neighbor", 3, horizon=2,
                                                 options={"complete": True}))
        self.fail_if(trace.get_matrix(0).get_min_positive() != Fraction(1, 3),
                     "Complete graph weights are not 1/3")

    def test_steady_coordinator(self):
        trace = Scenarios.gen_steady_coordinator(GeneratorSpec("steady_coordinator", 5,
                                                               horizon=9, seed=7))
        report = Monitors.check_dstar(trace)
        self.fail_if(not report.holds(), "D* fails")
        self.fail_if(report.get_detail(Monitors.KEY_J) != 1, "Fixed agent is not 1")
        spec = GeneratorSpec("steady_coordinator", 5, horizon=9, seed=7, options={"j0": 3})
        self.fail_if(not Monitors.check_dstar(Scenarios.generate(spec)).holds(),
                     "D* fails with j0 = 3")
        try:
            Scenarios.generate(GeneratorSpec("steady_coordinator", 3, options={"j0": 4}))
            self.fail("Agent j0 outside 1..n was accepted")
        except ScenarioError as e:
            self.log.debug(f"Error message: {e}")

    def test_granular(self):
        trace = Scenarios.construct_granular_chain(GeneratorSpec("granular_chain", 3, horizon=6))
        self.fail_if(trace.get_period() != 2, "Chain is not 2-periodic")
        self.fail_if(not Monitors.check_c(trace).fails(), "Single chain steps are oriented")
        self.fail_if(not Monitors.check_diamond(trace, Monitors.KIND_C, 0, 2).holds(),
                     "Chain products are not oriented")
        trace = Scenarios.construct_granular_pair(GeneratorSpec("granular_pair", 2, horizon=6))
        self.fail_if(not Monitors.check_diamond(trace, Monitors.KIND_D2, 0, 2).holds(),
                     "Pair products are not completely reducible")
        try:
            Scenarios.construct_granular_pair(GeneratorSpec("granular_pair", 3, horizon=6))
            self.fail("Pair construction with n = 3 was accepted")
        except ScenarioError as e:
            self.log.debug(f"Error message: {e}")

    def test_deterministic(self):
        spec = GeneratorSpec("coordinated", 5, 2, horizon=15, seed=8)
        first = Scenarios.generate(spec).to_dict()
        self.fail_if(Scenarios.generate(spec).to_dict() != first, "Same seed gives other traces")
        self.fail_if(Scenarios.generate(spec.with_seed(9)).to_dict() == first,
                     "Other seed gives the same trace")

    def test_delays(self):
        trace = Scenarios.generate(GeneratorSpec("coordinated", 3, 2, horizon=5, seed=1))
        options = trace.get_metadata()["options"]
        self.fail_if(options["delays"] != Delays.MODE_RANDOM_NONFIFO, "Default delays not random")
        self.fail_if(trace.get_delta_max() != 2, "Delta lost")
        spec = GeneratorSpec("coordinated", 3, 3, horizon=5, options={"delays": Delays.MODE_MAX})
        trace = Scenarios.generate(spec)
        self.fail_if(trace.get_delays().get_slice(4) != [[4, 2, 2], [2, 4, 2], [2, 2, 4]],
                     "Maximal delays not used")
        delays = Scenarios.gen_delays(3, 1, 4, Delays.MODE_ZERO)
        self.fail_if(delays.get_slice(3) != [[3] * 3] * 3, "Zero delays incorrect")

    def test_float_mode(self):
        spec = GeneratorSpec("coordinated", 4, horizon=5, seed=2, mode=Scalar.MODE_FLOAT)
        trace = Scenarios.generate(spec)
        self.fail_if(trace.get_mode() != Scalar.MODE_FLOAT, "Trace is not float")
        exact = Scenarios.generate(GeneratorSpec("coordinated", 4, horizon=5, seed=2))
        self.fail_if(exact.to_float().to_dict()["matrices"] != trace.to_dict()["matrices"],
                     "Float trace differs from the converted exact trace")

    def test_errors(self):
        cases = [
            GeneratorSpec("random", 3),
            GeneratorSpec("coordinated", 3, options={"foo": 1}),
            GeneratorSpec("coordinated", 3, alpha=1),
            GeneratorSpec("coordinated", 3, options={"coordinators": [4]}),
            GeneratorSpec("decentralized", 3, options={"window": 0}),
            GeneratorSpec("decentralized", 4, alpha="2/5", options={"symmetric": True})
        ]
        for spec in cases:
            try:
                Scenarios.generate(spec)
                self.fail(f"Invalid spec {spec} was accepted")
            except ScenarioError as e:
                self.log.debug(f"Error message: {e}")

    def test_repro(self):
        for name in Scenarios.REPROS:
            trace = Scenarios.get_repro(name)
            golden = TraceFile.read_json(Scenarios.get_golden_filename(name))
            self.fail_if(golden != trace.to_dict(), f"Trace {name} differs from the golden file")
            self.fail_if(Scenarios.load_golden(name).get_matrices() != trace.get_matrices(),
                         f"Golden {name} trace does not load")
        for call in [lambda: Scenarios.get_repro("spiral"),
                     lambda: Scenarios.get_golden_filename("spiral")]:
            try:
                call()
                self.fail("Unknown counterexample was accepted")
            except ScenarioError as e:
                self.log.debug(f"Error message: {e}")


if __name__ == "__main__":

    TestScenarios().run(True)

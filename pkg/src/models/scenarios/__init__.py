"""
Scenarios package: the seeded generator families, the delay tables and the two counterexamples.
"""

import os

from src.models.errors import ScenarioError
from src.models.scenarios.coordinated import coordinated
from src.models.scenarios.counterexamples import Counterexamples
from src.models.scenarios.counterexamples import SHIFTING_X0
from src.models.scenarios.decentralized import decentralized
from src.models.scenarios.delays import Delays
from src.models.scenarios.equal_neighbor import equal_neighbor
from src.models.scenarios.granular import granular_chain
from src.models.scenarios.granular import granular_pair
from src.models.scenarios.steady_coordinator import steady_coordinator
from src.models.simulator import Simulator
from src.models.trace_file import TraceFile


class Scenarios:

    REPRO_PERMUTATION = "permutation"
    REPRO_SHIFTING = "shifting"
    REPROS = [REPRO_PERMUTATION, REPRO_SHIFTING]

    GOLDEN_FOLDER = os.path.join(os.path.dirname(__file__), "golden")

    _GENERATORS = [
        coordinated,
        decentralized,
        equal_neighbor,
        steady_coordinator,
        granular_chain,
        granular_pair
    ]

    def __init__(self):
        raise RuntimeError("No instance of this class is permitted")

    ##########
    # Public #
    ##########

    @classmethod
    def get_generator_names(cls):
        return sorted(map(lambda x: x.get_name(), cls._GENERATORS))

    @classmethod
    def get_generator_by_name(cls, name):
        matches = list(filter(lambda x: x.get_name() == name, cls._GENERATORS))
        if len(matches) == 1:
            return matches[0]
        return None

    @classmethod
    def generate(cls, spec, logger=None):
        generator = cls.get_generator_by_name(spec.get_family())
        if generator is None:
            raise ScenarioError(f"Unknown family '{spec.get_family()}', expected one of "
                                f"{cls.get_generator_names()}")
        return generator.generate(spec, logger)

    @staticmethod
    def gen_coordinated(spec, logger=None):
        return coordinated.generate(spec, logger)

    @staticmethod
    def gen_decentralized(spec, logger=None):
        return decentralized.generate(spec, logger)

    @staticmethod
    def gen_equal_neighbor(spec, logger=None):
        return equal_neighbor.generate(spec, logger)

    @staticmethod
    def gen_steady_coordinator(spec, logger=None):
        return steady_coordinator.generate(spec, logger)

    @staticmethod
    def construct_granular_chain(spec, logger=None):
        return granular_chain.generate(spec, logger)

    @staticmethod
    def construct_granular_pair(spec, logger=None):
        return granular_pair.generate(spec, logger)

    @staticmethod
    def gen_delays(n, delta_max, horizon, mode, seed=0):
        return Delays.generate(n, delta_max, horizon, mode, seed)

    @staticmethod
    def counterexample_permutation(horizon=6):
        return Counterexamples.permutation(horizon)

    @staticmethod
    def counterexample_shifting(eps_schedule=None, phases=6):
        trace = Counterexamples.shifting(eps_schedule, phases)
        return trace, Simulator.run_delayed(trace, SHIFTING_X0)

    @classmethod
    def get_repro(cls, name, horizon=None, phases=None, eps_schedule=None):
        if name == cls.REPRO_PERMUTATION:
            return Counterexamples.permutation(6 if horizon is None else horizon)
        if name == cls.REPRO_SHIFTING:
            return Counterexamples.shifting(eps_schedule, 6 if phases is None else phases)
        raise ScenarioError(f"Unknown counterexample '{name}', expected one of {cls.REPROS}")

    @classmethod
    def get_golden_filename(cls, name):
        if name not in cls.REPROS:
            raise ScenarioError(f"No golden file for '{name}'")
        return os.path.join(cls.GOLDEN_FOLDER, f"{name}.json")

    @classmethod
    def load_golden(cls, name):
        return TraceFile.load(cls.get_golden_filename(name))


if __name__ == "__main__":

    from tests.unit_tests.test_models.test_scenarios import TestScenarios

    TestScenarios().run(True)

"""
Generic seeded generator. A family is defined by a dictionary with its name, info text, default
options, a build function and the monitors that must accept every generated trace.

build(spec, rng, options) returns (matrices, alpha, period).
monitors(trace) returns a list of ConditionReports.
"""

import numpy

from src.models.errors import ScenarioError
from src.models.scenario_trace import ScenarioTrace
from src.models.scalar import Scalar
from src.models.scenarios.delays import Delays


class ScenarioGenerator:

    KEY_BUILD = "build"
    KEY_DELAYS = "delays"
    KEY_INFO = "info"
    KEY_MONITORS = "monitors"
    KEY_NAME = "name"
    KEY_OPTIONS = "options"

    DEFAULT_INFO = "no info"

    def __init__(self, generator_definition):
        self._generator_definition = generator_definition

    ###########
    # Private #
    ###########

    def _get_options(self, spec):
        options = dict(self._generator_definition.get(self.KEY_OPTIONS, {}))
        unknown = set(spec.get_options()) - set(options) - {self.KEY_DELAYS}
        if len(unknown) > 0:
            raise ScenarioError(f"Unknown option(s) for '{self.get_name()}': "
                                f"{', '.join(sorted(unknown))}")
        options.update(spec.get_options())
        if options.get(self.KEY_DELAYS) is None:
            options[self.KEY_DELAYS] = (Delays.MODE_RANDOM_NONFIFO if spec.get_delta_max() > 1
                                        else Delays.MODE_ZERO)
        return options

    ##########
    # Public #
    ##########

    def get_name(self):
        return self._generator_definition[self.KEY_NAME]

    def get_info(self):
        return self._generator_definition.get(self.KEY_INFO, self.DEFAULT_INFO)

    def get_default_options(self):
        return dict(self._generator_definition.get(self.KEY_OPTIONS, {}))

    def generate(self, spec, logger=None):
        options = self._get_options(spec)
        rng = numpy.random.default_rng(spec.get_seed())
        matrices, alpha, period = self._generator_definition[self.KEY_BUILD](spec, rng, options)
        n = matrices[0].get_n()
        delays = Delays.generate(n, spec.get_delta_max(), len(matrices), options[self.KEY_DELAYS],
                                 int(rng.integers(2 ** 31)))
        metadata = {
            ScenarioTrace.KEY_FAMILY: self.get_name(),
            ScenarioTrace.KEY_SEED: spec.get_seed(),
            ScenarioTrace.KEY_OPTIONS: options
        }
        trace = ScenarioTrace(n, spec.get_delta_max(), alpha, matrices, delays, (), period,
                              metadata)
        for report in self._generator_definition.get(self.KEY_MONITORS, lambda x: [])(trace):
            if not report.holds():
                raise ScenarioError(f"Generated '{self.get_name()}' trace fails its own "
                                    f"{report.get_condition()} check: "
                                    f"{report.get_first_violation()}")
        if logger is not None:
            logger.debug(f"Generated {trace.get_header()[2:]}")
        if spec.get_mode() == Scalar.MODE_FLOAT:
            trace = trace.to_float()
        return trace


if __name__ == "__main__":

    from tests.unit_tests.test_models.test_scenarios import TestScenarios

    TestScenarios().run(True)

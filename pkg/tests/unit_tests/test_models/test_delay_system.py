"""
Test the augmented system and the column support tracker.
"""

import numpy

from fractions import Fraction

from src.models.delay_system import DelaySystem
from src.models.errors import DelayError
from src.models.errors import DimensionError
from src.models.scalar import Scalar
from src.models.scenario_trace import ScenarioTrace
from src.models.scenarios.delays import Delays
from src.models.stochastic_matrix import StochasticMatrix
from tests.test_environment.test_traces import HALF
from tests.test_environment.test_traces import constant_trace
from tests.test_environment.test_traces import random_matrix
from tests.unit_tests.lib.test_suite import TestSuite


class TestDelaySystem(TestSuite):

    _UNIFORM_2 = [[HALF, HALF], [HALF, HALF]]

    @staticmethod
    def _delayed_trace(seed, n, delta_max, horizon):
        rng = numpy.random.default_rng(seed)
        matrices = [random_matrix(rng, n, density=0.4) for _ in range(horizon)]
        delays = Delays.generate(n, delta_max, horizon, Delays.MODE_RANDOM_NONFIFO, seed)
        alpha = min(map(lambda x: x.get_min_positive(), matrices))
        return ScenarioTrace(n, delta_max, alpha, matrices, delays)

    def test_augmented_layout(self):
        a = StochasticMatrix(self._UNIFORM_2)
        augmented = DelaySystem.build_augmented(a, [[1, 0], [1, 1]], 2, 1)
        expected = [[0, 1, 0, 0], [0, HALF, HALF, 0], [0, 0, 0, 1], [0, HALF, 0, HALF]]
        self.fail_if(augmented.get_matrix().get_entries().tolist() != expected,
                     f"Augmented matrix incorrect:\n{augmented.get_matrix()}")
        self.fail_if(augmented.get_delay(1, 2) != 2, "Delay of (1,2) is not 2")
        self.fail_if(augmented.get_base_n() != 2, "Base dimension incorrect")

    def test_augmented_without_delays(self):
        a = StochasticMatrix(self._UNIFORM_2)
        augmented = DelaySystem.build_augmented(a, [[0, 0], [0, 0]], 1, 0)
        self.fail_if(augmented.get_matrix() != a, "Delta 1 does not give the base matrix")

    def test_augmented_is_stochastic(self):
        trace = self._delayed_trace(31, 3, 3, 12)
        for t in range(trace.get_horizon()):
            matrix = DelaySystem.augmented_at(trace, t).get_matrix()
            self.fail_if(matrix.get_n() != 9, "Augmented dimension is not n * delta")
            self.fail_if(any(sum(row) != 1 for row in matrix.get_entries()),
                         f"Augmented matrix at t = {t} is not stochastic")

    def test_augmented_invalid_slice(self):
        a = StochasticMatrix(self._UNIFORM_2)
        for tau_slice, t in [([[2, 0], [1, 1]], 1), ([[0, 0], [1, 1]], 1), ([[3, 0], [3, 3]], 3)]:
            try:
                DelaySystem.build_augmented(a, tau_slice, 2, t)
                self.fail(f"Invalid slice {tau_slice} was accepted")
            except DelayError as e:
                self.log.debug(f"Error message: {e}")

    def test_validate_delays(self):
        trace = self._delayed_trace(32, 3, 2, 6)
        self.fail_if(len(DelaySystem.validate_delays(trace.get_delays())) > 0,
                     "Generated delays are not valid")

    def test_initial_support(self):
        trace = constant_trace(self._UNIFORM_2, 5, 2)
        state = DelaySystem.initial_support(DelaySystem.augmented_at(trace, 1), 1, HALF, True)
        self.fail_if(state.get_s_delta(1) != {1, 2, 4}, f"S_1^D is {state.get_s_delta(1)}")
        self.fail_if(state.get_s_delta(2) != {2, 3, 4}, f"S_2^D is {state.get_s_delta(2)}")
        self.fail_if(state.get_s(1) != {1, 2}, f"S_1 is {state.get_s(1)}")
        self.fail_if(state.get_pi(1) != HALF, f"pi_1 is {state.get_pi(1)}")
        self.fail_if(state.get_cardinality() != 6, "Cardinality incorrect")
        self.fail_if(state.get_full_columns() != [], "Column full at t0")
        self.fail_if(state.get_value(1, 2) != 1, "Entry P[1, 2] incorrect")
        d = state.to_dict()
        self.fail_if(d["s_delta"]["1"] != [1, 2, 4] or d["pi"]["1"] != "1/2",
                     f"Support state dict incorrect: {d}")

    def test_advance_support(self):
        trace = constant_trace(self._UNIFORM_2, 5, 2)
        state = DelaySystem.initial_support(DelaySystem.augmented_at(trace, 1), 1, HALF, True)
        after = DelaySystem.advance_support(state, DelaySystem.augmented_at(trace, 2))
        self.fail_if(after.get_time() != 2, "Time did not advance")
        self.fail_if(after.get_full_columns() != [1, 2], "Columns are not full after one step")
        product = after.get_product()
        expected = DelaySystem.augmented_at(trace, 2).get_matrix().multiply(
            DelaySystem.augmented_at(trace, 1).get_matrix())
        self.fail_if(product != expected, "Tracked product differs from the direct product")
        try:
            DelaySystem.advance_support(after, DelaySystem.augmented_at(trace, 2))
            self.fail("Advance with the wrong time step was accepted")
        except DimensionError as e:
            self.log.debug(f"Error message: {e}")

    def test_first_positive_column(self):
        trace = constant_trace(self._UNIFORM_2, 5, 2)
        result = DelaySystem.first_positive_column(trace, 1)
        self.fail_if(result[DelaySystem.KEY_THETA] != {1: 2, 2: 2},
                     f"Theta is {result[DelaySystem.KEY_THETA]}")
        self.fail_if(result[DelaySystem.KEY_THETA_MAX] != 2, "Theta max incorrect")
        self.fail_if(result[DelaySystem.KEY_CARDINALITY] != [6, 8], "Cardinalities incorrect")

    def test_first_positive_column_not_reached(self):
        trace = constant_trace([[1, 0], [0, 1]], 4)
        result = DelaySystem.first_positive_column(trace, 0)
        self.fail_if(result[DelaySystem.KEY_THETA_MAX] is not None,
                     "Identity columns become positive")
        self.fail_if(result[DelaySystem.KEY_HORIZON] != 3, "Tracker did not run to the end")

    def test_track_support_start(self):
        trace = constant_trace(self._UNIFORM_2, 5, 3)
        try:
            list(DelaySystem.track_support(trace, 1))
            self.fail("Tracker started before delta - 1")
        except DelayError as e:
            self.log.debug(f"Error message: {e}")

    def test_support_is_monotone(self):
        trace = self._delayed_trace(33, 3, 2, 15)
        previous = None
        for state in DelaySystem.track_support(trace, 1):
            if previous is not None:
                for j in range(1, 4):
                    self.fail_if(not previous.get_s_delta(j) <= state.get_s_delta(j),
                                 f"S_{j}^D shrinks at t = {state.get_time()}")
                    self.fail_if(state.get_pi(j) < trace.get_alpha() * previous.get_pi(j),
                                 f"pi_{j} decays faster than alpha at t = {state.get_time()}")
            previous = state

    def test_support_by_paths(self):
        for seed in range(34, 38):
            trace = self._delayed_trace(seed, 3, 3, 10)
            t0 = 2
            augmented = [DelaySystem.augmented_at(trace, t) for t in range(t0, 10)]
            states = list(DelaySystem.track_support(trace, t0))
            for j in range(1, 4):
                by_paths = DelaySystem.column_support_by_paths(augmented, j)
                for state, support in zip(states, by_paths):
                    self.fail_if(state.get_s_delta(j) != support,
                                 f"Path support differs for j = {j} at t = {state.get_time()}")

    def test_float_support(self):
        trace = self._delayed_trace(38, 3, 2, 8)
        exact = list(DelaySystem.track_support(trace, 1))
        approximate = list(DelaySystem.track_support(trace.to_float(), 1))
        for a, b in zip(exact, approximate):
            self.fail_if(b.get_mode() != Scalar.MODE_FLOAT, "Float trace tracked as rational")
            for j in range(1, 4):
                self.fail_if(a.get_s_delta(j) != b.get_s_delta(j), "Float support differs")
                self.fail_if(abs(float(a.get_pi(j)) - b.get_pi(j)) > 1e-12, "Float pi differs")

    def test_stationarity_checks(self):
        trace = constant_trace(self._UNIFORM_2, 3)
        states = list(DelaySystem.track_support(trace, 0))
        report = DelaySystem.stationarity_checks(states[0], states[1], trace.get_graph(1))
        self.fail_if(not report[DelaySystem.KEY_HOLDS], f"Checks fail: {report}")
        column = report[DelaySystem.KEY_COLUMNS][1]
        self.fail_if(not column[DelaySystem.KEY_STALLED], "Full support is not stalled")
        self.fail_if(not column[DelaySystem.KEY_BLOCK_POSITIVE], "Blocks not positive")
        self.fail_if(not column[DelaySystem.KEY_FULL_IF_ORIENTED], "Oriented column not full")
        self.fail_if(column[DelaySystem.KEY_PI_NON_DECREASING] is not True, "pi decreases")

    def test_stationarity_not_stalled(self):
        trace = constant_trace([[1, 0, 0], [HALF, HALF, 0], [0, HALF, HALF]], 3)
        states = list(DelaySystem.track_support(trace, 0))
        report = DelaySystem.stationarity_checks(states[0], states[1], trace.get_graph(1))
        column = report[DelaySystem.KEY_COLUMNS][1]
        self.fail_if(column[DelaySystem.KEY_STALLED], "Growing support is stalled")
        self.fail_if(column[DelaySystem.KEY_NO_INCOMING] is not None,
                     "Incoming edge check done on a growing support")
        self.fail_if(states[1].get_s_delta(1) != {1, 2, 3}, "Column 1 is not full after a step")
        self.fail_if(states[0].get_pi(1) != HALF or states[1].get_pi(1) != Fraction(1, 4),
                     "pi_1 incorrect")


if __name__ == "__main__":

    TestDelaySystem().run(True)

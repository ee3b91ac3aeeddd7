"""
Agent values over time. All states are kept, the history property gives the last delta states.

For an augmented trajectory the states have length delta * n and the current value of agent i
sits at (1-based) index delta * i.
"""

import numpy

from src.models.errors import DimensionError
from src.models.matrix_core import MatrixCore
from src.models.scalar import Scalar


class Trajectory:

    def __init__(self, states, delta_max, mode, t_start=0, augmented=False):
        self._states = states
        self._states.setflags(write=False)
        self._delta_max = delta_max
        self._mode = mode
        self._t_start = t_start
        self._augmented = augmented
        self._osc_log = None

    ##########
    # Public #
    ##########

    def get_mode(self):
        return self._mode

    def get_delta_max(self):
        return self._delta_max

    def is_augmented(self):
        return self._augmented

    def get_dimension(self):
        return self._states.shape[1]

    def get_n(self):
        if self._augmented:
            return self._states.shape[1] // self._delta_max
        return self._states.shape[1]

    def get_t_start(self):
        return self._t_start

    def get_time(self):
        return self._t_start + self._states.shape[0] - 1

    def get_times(self):
        return list(range(self._t_start, self.get_time() + 1))

    def get_state(self, t):
        if not self._t_start <= t <= self.get_time():
            raise DimensionError(f"No state for t = {t}, trajectory covers "
                                 f"{self._t_start}..{self.get_time()}")
        return self._states[t - self._t_start]

    def get_states(self):
        return self._states

    def get_agent_values(self, t):
        """x(t): the current agent values, also for augmented trajectories."""
        state = self.get_state(t)
        if self._augmented:
            return state[self._delta_max - 1::self._delta_max]
        return state

    def get_history(self):
        # The last delta states x(t - delta + 1), ..., x(t)
        return self._states[-self._delta_max:]

    def get_osc_log(self):
        if self._osc_log is None:
            self._osc_log = list(map(MatrixCore.osc, self._states))
        return self._osc_log

    def get_max_log(self):
        return list(map(max, self._states))

    def get_min_log(self):
        return list(map(min, self._states))

    def to_float(self):
        if self._mode == Scalar.MODE_FLOAT:
            return self
        return Trajectory(self._states.astype(float), self._delta_max, Scalar.MODE_FLOAT,
                          self._t_start, self._augmented)

    @classmethod
    def from_values(cls, values, delta_max=1, mode=None, t_start=0):
        values = list(map(list, values))
        if mode is None:
            mode = Scalar.detect_mode([value for row in values for value in row])
        states = numpy.array([[Scalar.convert(value, mode) for value in row] for row in values],
                             dtype=object if mode == Scalar.MODE_RATIONAL else float)
        return cls(states, delta_max, mode, t_start)


if __name__ == "__main__":

    from tests.unit_tests.test_models.test_trajectory import TestTrajectory

    TestTrajectory().run(True)

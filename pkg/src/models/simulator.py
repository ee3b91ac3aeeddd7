"""
Runs the agreement algorithm on a scenario trace:

    x_i(t + 1) = sum_j A_ij(t) x_j(tau_ij(t))

either directly with the delay table, or as the zero-delay augmented system X(t + 1) = A^D(t) X(t).
"""

import numpy

from src.models.delay_system import DelaySystem
from src.models.errors import DimensionError
from src.models.errors import ToleranceError
from src.models.errors import TraceError
from src.models.matrix_core import MatrixCore
from src.models.scalar import Scalar
from src.models.trajectory import Trajectory


class Simulator:

    KEY_AGREES = "agrees"
    KEY_CONVERGED = "converged"
    KEY_ENVELOPE_MAX_NON_INCREASING = "envelope_max_non_increasing"
    KEY_ENVELOPE_MIN_NON_DECREASING = "envelope_min_non_decreasing"
    KEY_FINAL_OSC = "final_osc"
    KEY_HORIZON = "horizon"
    KEY_LIMIT = "limit"
    KEY_MAX_ABS_GAP = "max_abs_gap"
    KEY_MAX_NON_INCREASING = "max_non_increasing"
    KEY_MIN_NON_DECREASING = "min_non_decreasing"
    KEY_MODE = "mode"
    KEY_T_FROM = "t_from"
    KEY_T_HIT = "t_hit"
    KEY_TOLERANCE = "tolerance"
    KEY_VERDICT = "verdict"

    DEFAULT_TOLERANCE = 1e-8
    # Float agreement of the delayed and augmented runs, per unit of osc(x0)
    EQUIVALENCE_TOLERANCE = 1e-12

    def __init__(self):
        raise RuntimeError("No instance of this class is permitted")

    ###########
    # Private #
    ###########

    @staticmethod
    def _initial_values(trace, x0):
        values = list(x0)
        if len(values) != trace.get_n():
            raise DimensionError(f"Initial vector has length {len(values)}, expected "
                                 f"{trace.get_n()}")
        return list(map(lambda x: Scalar.convert(x, trace.get_mode()), values))

    @staticmethod
    def _dtype(trace):
        return object if trace.is_rational() else float

    @classmethod
    def _run_direct(cls, trace, x0, until):
        n = trace.get_n()
        values = numpy.empty((until + 1, n), dtype=cls._dtype(trace))
        values[0] = cls._initial_values(trace, x0)
        columns = numpy.arange(n)[None, :]
        for t in range(until):
            tau = numpy.array(trace.get_delays().get_slice(t))
            gathered = values[tau, columns]
            values[t + 1] = (trace.get_matrix(t).get_entries() * gathered).sum(axis=1)
        return values

    @staticmethod
    def _is_monotone(values, decreasing):
        pairs = zip(values, values[1:])
        if decreasing:
            return all(b <= a for a, b in pairs)
        return all(b >= a for a, b in pairs)

    @staticmethod
    def _window(values, delta_max, reducer):
        return [reducer(values[max(0, t - delta_max + 1):t + 1]) for t in range(len(values))]

    ##########
    # Public #
    ##########

    @classmethod
    def run_delayed(cls, trace, x0):
        values = cls._run_direct(trace, x0, trace.get_horizon())
        return Trajectory(values, trace.get_delta_max(), trace.get_mode())

    @classmethod
    def run_augmented(cls, trace, x0):
        delta_max = trace.get_delta_max()
        if trace.get_horizon() < delta_max - 1:
            raise TraceError(f"Horizon {trace.get_horizon()} is shorter than delta - 1 = "
                             f"{delta_max - 1}")
        # Bootstrap x(0..delta-1) directly, then X(delta-1) holds x_i(delta-1-d+1) at delta*i-d+1
        start = cls._run_direct(trace, x0, delta_max - 1)
        states = numpy.empty((trace.get_horizon() - delta_max + 2, trace.get_n() * delta_max),
                             dtype=cls._dtype(trace))
        states[0] = start.T.ravel()
        for index, t in enumerate(range(delta_max - 1, trace.get_horizon())):
            matrix = DelaySystem.augmented_at(trace, t).get_matrix()
            states[index + 1] = matrix.get_entries().dot(states[index])
        return Trajectory(states, delta_max, trace.get_mode(), delta_max - 1, True)

    @classmethod
    def equivalence_check(cls, trace, x0):
        delayed = cls.run_delayed(trace, x0)
        augmented = cls.run_augmented(trace, x0)
        t_from = trace.get_delta_max() - 1
        gap = 0
        for t in range(t_from, delayed.get_time() + 1):
            difference = abs(delayed.get_state(t) - augmented.get_agent_values(t))
            gap = max(gap, max(difference))
        if trace.is_rational():
            tolerance = 0
        else:
            tolerance = cls.EQUIVALENCE_TOLERANCE * float(MatrixCore.osc(delayed.get_state(0)))
        return {
            cls.KEY_MODE: trace.get_mode(),
            cls.KEY_T_FROM: t_from,
            cls.KEY_HORIZON: trace.get_horizon(),
            cls.KEY_MAX_ABS_GAP: gap,
            cls.KEY_TOLERANCE: tolerance,
            cls.KEY_AGREES: gap <= tolerance
        }

    @classmethod
    def consensus_verdict(cls, trajectory, tol=DEFAULT_TOLERANCE):
        if tol is None or tol <= 0:
            raise ToleranceError(f"Tolerance must be positive, got {tol}")
        osc_log = trajectory.get_osc_log()
        hits = list(filter(lambda x: osc_log[x] < tol, range(len(osc_log))))
        t_hit = None
        limit = None
        if len(hits) > 0:
            state = trajectory.get_states()[hits[0]]
            t_hit = trajectory.get_t_start() + hits[0]
            limit = (max(state) + min(state)) / 2
        max_log = trajectory.get_max_log()
        min_log = trajectory.get_min_log()
        delta_max = 1 if trajectory.is_augmented() else trajectory.get_delta_max()
        horizon = trajectory.get_time()
        if t_hit is None:
            verdict = f"not converged within horizon {horizon} at tolerance {tol}"
        else:
            verdict = f"converged at t = {t_hit} (horizon {horizon}, tolerance {tol})"
        return {
            cls.KEY_CONVERGED: t_hit is not None,
            cls.KEY_T_HIT: t_hit,
            cls.KEY_LIMIT: limit,
            cls.KEY_HORIZON: horizon,
            cls.KEY_TOLERANCE: tol,
            cls.KEY_FINAL_OSC: osc_log[-1],
            cls.KEY_MAX_NON_INCREASING: cls._is_monotone(max_log, True),
            cls.KEY_MIN_NON_DECREASING: cls._is_monotone(min_log, False),
            cls.KEY_ENVELOPE_MAX_NON_INCREASING: cls._is_monotone(
                cls._window(max_log, delta_max, max), True),
            cls.KEY_ENVELOPE_MIN_NON_DECREASING: cls._is_monotone(
                cls._window(min_log, delta_max, min), False),
            cls.KEY_VERDICT: verdict
        }


if __name__ == "__main__":

    from tests.unit_tests.test_models.test_simulator import TestSimulator

    TestSimulator().run(True)

"""
Delay tables that satisfy B1-B3.
"""

import numpy

from src.models.delay_schedule import DelaySchedule
from src.models.errors import ScenarioError


class Delays:

    MODE_ZERO = "zero"
    MODE_MAX = "max"
    MODE_RANDOM_NONFIFO = "random_nonfifo"
    MODES = [MODE_ZERO, MODE_MAX, MODE_RANDOM_NONFIFO]

    def __init__(self):
        raise RuntimeError("No instance of this class is permitted")

    ##########
    # Public #
    ##########

    @classmethod
    def generate(cls, n, delta_max, horizon, mode, seed=0):
        if delta_max < 1:
            raise ScenarioError(f"Delay bound must be at least 1, got {delta_max}")
        if mode not in cls.MODES:
            raise ScenarioError(f"Unknown delay mode '{mode}', expected one of {cls.MODES}")
        rng = numpy.random.default_rng(seed)
        tau = []
        for t in range(horizon):
            lower = max(0, t - delta_max + 1)
            if mode == cls.MODE_ZERO:
                tau_slice = [[t] * n for _ in range(n)]
            elif mode == cls.MODE_MAX:
                tau_slice = [[t if i == j else lower for j in range(n)] for i in range(n)]
            else:
                # Independent draws, so tau_ij(t) need not grow with t
                draws = rng.integers(lower, t + 1, size=(n, n))
                tau_slice = [[t if i == j else int(draws[i, j]) for j in range(n)]
                             for i in range(n)]
            tau.append(tau_slice)
        return DelaySchedule(n, delta_max, tau)


if __name__ == "__main__":

    from tests.unit_tests.test_models.test_delays import TestDelays

    TestDelays().run(True)

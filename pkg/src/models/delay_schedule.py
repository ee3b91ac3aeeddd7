"""
Delay table tau[t][i][j]: the time of the value of agent j that agent i uses at time t.

Agents are numbered 1..n in reports and in get_tau/set_tau; the stored slices are 0-based lists.
"""

import copy

from src.models.errors import DelayError


class DelaySchedule:

    KEY_DELTA = "delta"
    KEY_HORIZON = "horizon"
    KEY_I = "i"
    KEY_J = "j"
    KEY_N = "n"
    KEY_RULE = "rule"
    KEY_T = "t"
    KEY_TAU = "tau"

    RULE_B1 = "B1"
    RULE_B2 = "B2"
    RULE_B3 = "B3"

    def __init__(self, n, delta_max, tau):
        if n < 1:
            raise DelayError(f"Invalid number of agents: {n}")
        if delta_max < 1:
            raise DelayError(f"Delay bound must be at least 1, got {delta_max}")
        self._n = int(n)
        self._delta_max = int(delta_max)
        self._tau = [[list(map(int, row)) for row in tau_slice] for tau_slice in tau]
        for t, tau_slice in enumerate(self._tau):
            if len(tau_slice) != n or any(map(lambda x: len(x) != n, tau_slice)):
                raise DelayError(f"Delay slice at t = {t} is not {n}x{n}")

    ###########
    # Private #
    ###########

    @classmethod
    def _slice_violations(cls, tau_slice, t, delta_max):
        violations = []
        lower = max(0, t - delta_max + 1)
        for i, row in enumerate(tau_slice):
            for j, tau in enumerate(row):
                rule = None
                if tau > t:
                    rule = cls.RULE_B1
                elif i == j and tau != t:
                    rule = cls.RULE_B2
                elif tau < lower:
                    rule = cls.RULE_B3
                if rule is not None:
                    violations.append({cls.KEY_RULE: rule, cls.KEY_I: i + 1, cls.KEY_J: j + 1,
                                       cls.KEY_T: t, cls.KEY_TAU: tau})
        return violations

    ##########
    # Public #
    ##########

    def get_n(self):
        return self._n

    def get_delta_max(self):
        return self._delta_max

    def get_horizon(self):
        return len(self._tau)

    def get_slice(self, t):
        if not 0 <= t < len(self._tau):
            raise DelayError(f"No delays for t = {t}, horizon is {len(self._tau)}")
        return self._tau[t]

    def get_tau(self, t, i, j):
        return self.get_slice(t)[i - 1][j - 1]

    def get_delay(self, t, i, j):
        # delta_ij(t) = t - tau_ij(t) + 1, in 1..delta_max for a valid schedule
        return t - self.get_tau(t, i, j) + 1

    def set_tau(self, t, i, j, value):
        self.get_slice(t)[i - 1][j - 1] = int(value)

    def truncated(self, horizon):
        return DelaySchedule(self._n, self._delta_max, copy.deepcopy(self._tau[:horizon]))

    @classmethod
    def check_slice(cls, tau_slice, t, delta_max):
        return cls._slice_violations(tau_slice, t, delta_max)

    def validate(self):
        violations = []
        for t, tau_slice in enumerate(self._tau):
            violations.extend(self._slice_violations(tau_slice, t, self._delta_max))
        return violations

    def to_dict(self):
        return {
            self.KEY_N: self._n,
            self.KEY_DELTA: self._delta_max,
            self.KEY_HORIZON: len(self._tau),
            self.KEY_TAU: copy.deepcopy(self._tau)
        }

    @classmethod
    def from_dict(cls, d):
        tau = d[cls.KEY_TAU]
        if len(tau) != d.get(cls.KEY_HORIZON, len(tau)):
            raise DelayError(f"Field '{cls.KEY_HORIZON}' is {d[cls.KEY_HORIZON]}, but there are "
                             f"{len(tau)} delay slices")
        return cls(d[cls.KEY_N], d[cls.KEY_DELTA], tau)

    @classmethod
    def zero(cls, n, delta_max, horizon):
        return cls(n, delta_max, [[[t] * n for _ in range(n)] for t in range(horizon)])


if __name__ == "__main__":

    from tests.unit_tests.test_models.test_delay_schedule import TestDelaySchedule

    TestDelaySchedule().run(True)

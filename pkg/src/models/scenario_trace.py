"""
A finite scenario: the weight matrices A(0..horizon-1), the delay table and the generator metadata.

Assumptions checked at construction:
    A1: every A(t) is stochastic (done by StochasticMatrix)
    A2: every A(t) has a positive diagonal, unless the trace is flagged "violates-A2"
    A3: every positive entry is at least alpha
    B1-B3: the delay table is valid
"""

from src.app_data import AppData
from src.models.delay_schedule import DelaySchedule
from src.models.digraph import Digraph
from src.models.errors import ConsensusLabError
from src.models.errors import TraceError
from src.models.errors import TraceFileError
from src.models.scalar import Scalar
from src.models.stochastic_matrix import StochasticMatrix


class ScenarioTrace:

    FLAG_VIOLATES_A2 = "violates-A2"

    KEY_ALPHA = "alpha"
    KEY_DELAYS = "delays"
    KEY_DELTA = "delta"
    KEY_FAMILY = "family"
    KEY_FLAGS = "flags"
    KEY_HORIZON = "horizon"
    KEY_MATRICES = "matrices"
    KEY_METADATA = "metadata"
    KEY_MODE = "mode"
    KEY_N = "n"
    KEY_OPTIONS = "options"
    KEY_PERIOD = "period"
    KEY_SCHEMA = "schema"
    KEY_SEED = "seed"

    def __init__(self, n, delta_max, alpha, matrices, delays=None, flags=(), period=None,
                 metadata=None):
        self._n = int(n)
        self._delta_max = int(delta_max)
        self._alpha = Scalar.to_fraction(alpha)
        self._matrices = list(matrices)
        self._flags = sorted(set(flags))
        self._period = period
        self._metadata = {} if metadata is None else dict(metadata)
        if delays is None:
            delays = DelaySchedule.zero(self._n, self._delta_max, len(self._matrices))
        self._delays = delays
        self._graphs = [None] * len(self._matrices)
        self._validate()

    ###########
    # Private #
    ###########

    def _validate(self):
        if self._n < 1:
            raise TraceError(f"Invalid number of agents: {self._n}")
        if not 0 < self._alpha <= 1:
            raise TraceError(f"Alpha must be in (0, 1], got {Scalar.to_text(self._alpha)}")
        if len(self._matrices) == 0:
            raise TraceError("A trace needs at least one matrix")
        modes = set(map(lambda x: x.get_mode(), self._matrices))
        if len(modes) > 1:
            raise TraceError("All matrices of a trace must have the same mode")
        for t, matrix in enumerate(self._matrices):
            if matrix.get_n() != self._n:
                raise TraceError(f"A({t}) has dimension {matrix.get_n()}, expected {self._n}")
            threshold = self._alpha
            if not matrix.is_rational():
                threshold = float(self._alpha) - Scalar.FLOAT_TOLERANCE
            if matrix.get_min_positive() < threshold:
                raise TraceError(f"A({t}) violates A3: positive entry "
                                 f"{Scalar.to_text(matrix.get_min_positive())} below alpha "
                                 f"{Scalar.to_text(self._alpha)}")
            if not self.violates_a2() and not matrix.has_self_loops():
                raise TraceError(f"A({t}) violates A2: zero diagonal entry")
        if self._delays.get_n() != self._n:
            raise TraceError(f"Delay table is for {self._delays.get_n()} agents, expected "
                             f"{self._n}")
        if self._delays.get_delta_max() != self._delta_max:
            raise TraceError(f"Delay table has delta {self._delays.get_delta_max()}, expected "
                             f"{self._delta_max}")
        if self._delays.get_horizon() != len(self._matrices):
            raise TraceError(f"Delay table has horizon {self._delays.get_horizon()}, expected "
                             f"{len(self._matrices)}")
        violations = self._delays.validate()
        if len(violations) > 0:
            v = violations[0]
            raise TraceError(f"Delay table violates {v[DelaySchedule.KEY_RULE]} at "
                             f"(i={v[DelaySchedule.KEY_I]}, j={v[DelaySchedule.KEY_J]}, "
                             f"t={v[DelaySchedule.KEY_T]})")
        if self._period is not None:
            if self._period < 1:
                raise TraceError(f"Invalid period: {self._period}")
            for t in range(self._period, len(self._matrices)):
                if self._matrices[t] != self._matrices[t - self._period]:
                    raise TraceError(f"A({t}) differs from A({t - self._period}), the trace is "
                                     f"not {self._period}-periodic")

    @staticmethod
    def _get_field(d, key, context="trace"):
        if key not in d:
            raise TraceFileError(f"Missing field '{key}' in {context}")
        return d[key]

    ##########
    # Public #
    ##########

    def get_n(self):
        return self._n

    def get_delta_max(self):
        return self._delta_max

    def get_alpha(self):
        return self._alpha

    def get_horizon(self):
        return len(self._matrices)

    def get_mode(self):
        return self._matrices[0].get_mode()

    def is_rational(self):
        return self.get_mode() == Scalar.MODE_RATIONAL

    def get_matrix(self, t):
        if not 0 <= t < len(self._matrices):
            raise TraceError(f"No matrix for t = {t}, horizon is {len(self._matrices)}")
        return self._matrices[t]

    def get_matrices(self):
        return list(self._matrices)

    def get_delays(self):
        return self._delays

    def get_graph(self, t):
        if self._graphs[t] is None:
            self._graphs[t] = Digraph.from_pattern(self.get_matrix(t).get_pattern())
        return self._graphs[t]

    def get_graphs(self):
        return list(map(self.get_graph, range(len(self._matrices))))

    def get_flags(self):
        return list(self._flags)

    def has_flag(self, flag):
        return flag in self._flags

    def violates_a2(self):
        return self.has_flag(self.FLAG_VIOLATES_A2)

    def get_period(self):
        return self._period

    def get_metadata(self):
        return dict(self._metadata)

    def get_family(self):
        return self._metadata.get(self.KEY_FAMILY, "custom")

    def get_seed(self):
        return self._metadata.get(self.KEY_SEED)

    def truncated(self, horizon):
        if not 1 <= horizon <= len(self._matrices):
            raise TraceError(f"Cannot truncate a trace of horizon {len(self._matrices)} to "
                             f"{horizon}")
        return ScenarioTrace(self._n, self._delta_max, self._alpha, self._matrices[:horizon],
                             self._delays.truncated(horizon), self._flags, self._period,
                             self._metadata)

    def to_float(self):
        return ScenarioTrace(self._n, self._delta_max, self._alpha,
                             map(lambda x: x.to_float(), self._matrices), self._delays,
                             self._flags, self._period, self._metadata)

    def get_header(self):
        return (f"# {AppData.APP_NAME} {AppData.SCHEMA} family={self.get_family()} "
                f"seed={self.get_seed()} n={self._n} delta={self._delta_max} "
                f"alpha={Scalar.to_text(self._alpha)} horizon={self.get_horizon()}")

    def to_dict(self):
        return {
            self.KEY_SCHEMA: AppData.SCHEMA,
            self.KEY_N: self._n,
            self.KEY_DELTA: self._delta_max,
            self.KEY_ALPHA: Scalar.to_text(self._alpha),
            self.KEY_HORIZON: self.get_horizon(),
            self.KEY_MODE: self.get_mode(),
            self.KEY_FLAGS: list(self._flags),
            self.KEY_PERIOD: self._period,
            self.KEY_METADATA: dict(self._metadata),
            self.KEY_MATRICES: [[list(map(Scalar.to_json, row)) for row in matrix.get_entries()]
                                for matrix in self._matrices],
            self.KEY_DELAYS: self._delays.to_dict()
        }

    @classmethod
    def from_dict(cls, d):
        schema = cls._get_field(d, cls.KEY_SCHEMA)
        if schema != AppData.SCHEMA:
            raise TraceFileError(f"Field '{cls.KEY_SCHEMA}' is '{schema}', expected "
                                 f"'{AppData.SCHEMA}'")
        n = cls._get_field(d, cls.KEY_N)
        if not isinstance(n, int) or n < 1:
            raise TraceFileError(f"Field '{cls.KEY_N}' must be a positive integer, got {n!r}")
        delta_max = cls._get_field(d, cls.KEY_DELTA)
        if not isinstance(delta_max, int) or delta_max < 1:
            raise TraceFileError(f"Field '{cls.KEY_DELTA}' must be a positive integer, got "
                                 f"{delta_max!r}")
        mode = d.get(cls.KEY_MODE, Scalar.MODE_RATIONAL)
        if mode not in Scalar.MODES:
            raise TraceFileError(f"Field '{cls.KEY_MODE}' is '{mode}', expected one of "
                                 f"{Scalar.MODES}")
        try:
            alpha = Scalar.to_fraction(cls._get_field(d, cls.KEY_ALPHA))
        except ConsensusLabError as e:
            raise TraceFileError(f"Field '{cls.KEY_ALPHA}': {e}") from e
        matrices = []
        for t, rows in enumerate(cls._get_field(d, cls.KEY_MATRICES)):
            try:
                matrices.append(StochasticMatrix(
                    [[Scalar.from_json(value, mode) for value in row] for row in rows], mode))
            except ConsensusLabError as e:
                raise TraceFileError(f"Field '{cls.KEY_MATRICES}[{t}]': {e}") from e
        horizon = d.get(cls.KEY_HORIZON, len(matrices))
        if horizon != len(matrices):
            raise TraceFileError(f"Field '{cls.KEY_HORIZON}' is {horizon}, but there are "
                                 f"{len(matrices)} matrices")
        delays = None
        if d.get(cls.KEY_DELAYS) is not None:
            try:
                delays = DelaySchedule.from_dict(d[cls.KEY_DELAYS])
            except KeyError as e:
                raise TraceFileError(f"Missing field '{e.args[0]}' in "
                                     f"'{cls.KEY_DELAYS}'") from e
            except ConsensusLabError as e:
                raise TraceFileError(f"Field '{cls.KEY_DELAYS}': {e}") from e
        try:
            return cls(n, delta_max, alpha, matrices, delays, d.get(cls.KEY_FLAGS, []),
                       d.get(cls.KEY_PERIOD), d.get(cls.KEY_METADATA))
        except ConsensusLabError as e:
            raise TraceFileError(f"Invalid trace: {e}") from e

    @classmethod
    def from_rows(cls, rows_sequence, alpha=None, delta_max=1, delays=None, flags=(),
                  period=None, metadata=None):
        """Builds a trace from nested lists of matrix rows, alpha defaults to the smallest
        positive entry."""
        matrices = list(map(StochasticMatrix, rows_sequence))
        if alpha is None:
            alpha = min(map(lambda x: Scalar.to_fraction(x.get_min_positive()), matrices))
        return cls(matrices[0].get_n(), delta_max, alpha, matrices, delays, flags, period,
                   metadata)


if __name__ == "__main__":

    from tests.unit_tests.test_models.test_scenario_trace import TestScenarioTrace

    TestScenarioTrace().run(True)

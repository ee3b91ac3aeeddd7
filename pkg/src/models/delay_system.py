"""
Reduction of the delayed recursion to a zero-delay linear system, and the column support tracker.

Index encoding of the augmented system (1-based, as in the reports): the value of agent i with
delay d (1 <= d <= delta) sits at index k = delta * i - d + 1. Index delta * i holds the current
value of agent i. The 0-based array position is k - 1.

The running product P(t) = A^D(t) ... A^D(t0) is tracked column by column for the columns
delta * j (the current values). For each column j:
    S_j^D(t): rows m with P[m, delta * j] > 0
    S_j(t):   agents i with P[delta * i, delta * j] > 0
    pi_j(t):  the smallest positive entry of the column
"""

import math
import numpy

from fractions import Fraction

from src.models.delay_schedule import DelaySchedule
from src.models.errors import DelayError
from src.models.errors import DimensionError
from src.models.errors import LemmaViolationError
from src.models.errors import TraceError
from src.models.graph_analysis import GraphAnalysis
from src.models.scalar import Scalar
from src.models.stochastic_matrix import StochasticMatrix


class AugmentedMatrix:

    def __init__(self, base, tau_slice, delta_max, t, matrix):
        self._base = base
        self._tau_slice = tau_slice
        self._delta_max = delta_max
        self._t = t
        self._matrix = matrix

    def get_base(self):
        return self._base

    def get_base_n(self):
        return self._base.get_n()

    def get_slice(self):
        return self._tau_slice

    def get_delta_max(self):
        return self._delta_max

    def get_time(self):
        return self._t

    def get_matrix(self):
        return self._matrix

    def get_delay(self, i, j):
        # delta_ij(t), agents 1-based
        return self._t - self._tau_slice[i - 1][j - 1] + 1


class SupportState:

    KEY_PI = "pi"
    KEY_S = "s"
    KEY_S_DELTA = "s_delta"
    KEY_T = "t"
    KEY_T0 = "t0"

    def __init__(self, t0, t, base_n, delta_max, mode, values, denominator=1, alpha=None,
                 lemma_checks=False):
        self._t0 = t0
        self._t = t
        self._base_n = base_n
        self._delta_max = delta_max
        self._mode = mode
        # Rational mode: integer numerators over a common denominator. Float mode: the entries.
        self._values = values
        self._values.setflags(write=False)
        self._denominator = denominator
        self._alpha = alpha
        self._lemma_checks = lemma_checks
        self._s_delta = {}
        self._s = {}
        self._pi = {}
        for j in range(1, base_n + 1):
            column = values[:, delta_max * j - 1]
            positive = frozenset(m + 1 for m in range(len(column)) if column[m] > 0)
            self._s_delta[j] = positive
            self._s[j] = frozenset(i for i in range(1, base_n + 1) if delta_max * i in positive)
            if len(positive) > 0:
                smallest = min(column[m - 1] for m in positive)
                self._pi[j] = (Fraction(int(smallest), denominator)
                               if mode == Scalar.MODE_RATIONAL else float(smallest))
            else:
                self._pi[j] = None

    ##########
    # Public #
    ##########

    def get_t0(self):
        return self._t0

    def get_time(self):
        return self._t

    def get_base_n(self):
        return self._base_n

    def get_delta_max(self):
        return self._delta_max

    def get_size(self):
        return self._base_n * self._delta_max

    def get_mode(self):
        return self._mode

    def get_alpha(self):
        return self._alpha

    def has_lemma_checks(self):
        return self._lemma_checks

    def get_raw_values(self):
        return self._values, self._denominator

    def get_value(self, m, column):
        """Entry P[m, column] with 1-based indices."""
        value = self._values[m - 1, column - 1]
        if self._mode == Scalar.MODE_RATIONAL:
            return Fraction(int(value), self._denominator)
        return float(value)

    def get_product(self):
        if self._mode == Scalar.MODE_RATIONAL:
            return StochasticMatrix.from_scaled_integers(self._values, self._denominator)
        return StochasticMatrix(self._values, Scalar.MODE_FLOAT, validate=False)

    def get_s_delta(self, j):
        return self._s_delta[j]

    def get_s(self, j):
        return self._s[j]

    def get_pi(self, j):
        return self._pi[j]

    def is_column_full(self, j):
        return len(self._s_delta[j]) == self.get_size()

    def get_full_columns(self):
        return list(filter(self.is_column_full, range(1, self._base_n + 1)))

    def get_cardinality(self):
        # |S^D(t)| for the set of pairs (m, j)
        return sum(map(len, self._s_delta.values()))

    def to_dict(self):
        return {
            self.KEY_T0: self._t0,
            self.KEY_T: self._t,
            self.KEY_S_DELTA: {str(j): sorted(s) for j, s in self._s_delta.items()},
            self.KEY_S: {str(j): sorted(s) for j, s in self._s.items()},
            self.KEY_PI: {str(j): None if pi is None else Scalar.to_json(pi)
                          for j, pi in self._pi.items()}
        }


class DelaySystem:

    KEY_BLOCK_POSITIVE = "block_positive"
    KEY_CARDINALITY = "cardinality"
    KEY_COLUMNS = "columns"
    KEY_FULL_IF_ORIENTED = "full_if_oriented"
    KEY_HOLDS = "holds"
    KEY_HORIZON = "horizon"
    KEY_NO_INCOMING = "no_incoming"
    KEY_NO_OUTGOING = "no_outgoing"
    KEY_PATH_CHECK = "path_check"
    KEY_PI_NON_DECREASING = "pi_non_decreasing"
    KEY_STALLED = "stalled"
    KEY_T = "t"
    KEY_T0 = "t0"
    KEY_THETA = "theta"
    KEY_THETA_MAX = "theta_max"
    KEY_VIOLATIONS = "violations"

    # Default for the lemma-level assertions, the callers can override per call
    DEBUG_ASSERTIONS = True
    # Boolean path propagation cross-check is only done up to this augmented size
    PATH_CHECK_MAX_SIZE = 12

    def __init__(self):
        raise RuntimeError("No instance of this class is permitted")

    ###########
    # Private #
    ###########

    @classmethod
    def _debug(cls, debug):
        return cls.DEBUG_ASSERTIONS if debug is None else debug

    @staticmethod
    def _check_properties(a, matrix, delta_max, tau_slice, t):
        entries = matrix.get_entries()
        n = a.get_n()
        size = n * delta_max
        for m in range(1, size + 1):
            row = entries[m - 1]
            if m % delta_max != 0:
                # Property (1): unit row pointing at m + 1
                expected = [1 if k == m else 0 for k in range(size)]
                if any(row[k] != expected[k] for k in range(size)):
                    raise LemmaViolationError(f"Row {m} of the augmented matrix at t = {t} is "
                                              f"not the unit row e_{m + 1}")
                continue
            i = m // delta_max
            for j in range(1, n + 1):
                # Property (2): one entry in block j, equal to A_ij, at delay delta_ij(t)
                block = row[delta_max * (j - 1):delta_max * j]
                column = delta_max * j - (t - tau_slice[i - 1][j - 1] + 1) + 1
                if row[column - 1] != a.get_value(i - 1, j - 1) or sum(block) != row[column - 1]:
                    raise LemmaViolationError(f"Block {j} of row {m} of the augmented matrix at "
                                              f"t = {t} does not hold A_{i}{j}")
            # Property (3)
            if row[m - 1] != a.get_value(i - 1, i - 1):
                raise LemmaViolationError(f"Diagonal entry {m} of the augmented matrix at "
                                          f"t = {t} differs from A_{i}{i}")

    @staticmethod
    def _column_values(state, column):
        return [state.get_value(m, column) for m in range(1, state.get_size() + 1)]

    @classmethod
    def _check_recurrences(cls, before, after, augmented):
        delta_max = before.get_delta_max()
        n = before.get_base_n()
        a = augmented.get_base()
        tolerance = None if before.get_mode() == Scalar.MODE_RATIONAL else Scalar.FLOAT_TOLERANCE
        for j in range(1, n + 1):
            column = delta_max * j
            old = cls._column_values(before, column)
            new = cls._column_values(after, column)
            for m in range(1, before.get_size() + 1):
                if m % delta_max != 0:
                    expected = old[m]
                    name = "R1"
                else:
                    i = m // delta_max
                    expected = 0
                    for k in range(1, n + 1):
                        source = delta_max * k - augmented.get_delay(i, k) + 1
                        expected += a.get_value(i - 1, k - 1) * old[source - 1]
                    name = "R2"
                if not Scalar.is_close(new[m - 1], expected, tolerance):
                    raise LemmaViolationError(
                        f"Recurrence {name} fails at t = {after.get_time()}, row {m}, column "
                        f"{column}: {Scalar.to_text(new[m - 1])} != {Scalar.to_text(expected)}")

    @staticmethod
    def _check_monotone(before, after):
        alpha = before.get_alpha()
        for j in range(1, before.get_base_n() + 1):
            if not before.get_s_delta(j) <= after.get_s_delta(j):
                raise LemmaViolationError(f"S_{j}^D shrinks at t = {after.get_time()}")
            if not before.get_s(j) <= after.get_s(j):
                raise LemmaViolationError(f"S_{j} shrinks at t = {after.get_time()}")
            if after.get_pi(j) < alpha * before.get_pi(j) - (
                    0 if before.get_mode() == Scalar.MODE_RATIONAL else Scalar.FLOAT_TOLERANCE):
                raise LemmaViolationError(f"pi_{j} decays faster than alpha at "
                                          f"t = {after.get_time()}")

    @staticmethod
    def _has_a2(trace):
        return not trace.violates_a2() and trace.get_alpha() is not None

    ##########
    # Public #
    ##########

    @staticmethod
    def validate_delays(d):
        return d.validate()

    @classmethod
    def build_augmented(cls, a, tau_slice, delta_max, t):
        violations = DelaySchedule.check_slice(tau_slice, t, delta_max)
        if len(violations) > 0:
            v = violations[0]
            raise DelayError(f"Invalid delay slice at t = {t}: {v[DelaySchedule.KEY_RULE]} "
                             f"violated for ({v[DelaySchedule.KEY_I]},{v[DelaySchedule.KEY_J]})")
        if len(tau_slice) != a.get_n():
            raise DimensionError(f"Delay slice has {len(tau_slice)} rows, expected {a.get_n()}")
        if delta_max == 1:
            return AugmentedMatrix(a, tau_slice, delta_max, t, a)
        n = a.get_n()
        size = n * delta_max
        zero = 0 if a.is_rational() else 0.0
        rows = [[zero] * size for _ in range(size)]
        for m in range(1, size + 1):
            if m % delta_max != 0:
                rows[m - 1][m] = 1
                continue
            i = m // delta_max
            for j in range(1, n + 1):
                column = delta_max * j - (t - tau_slice[i - 1][j - 1] + 1) + 1
                rows[m - 1][column - 1] = a.get_value(i - 1, j - 1)
        matrix = StochasticMatrix(rows, a.get_mode(), a.get_alpha(), validate=False)
        cls._check_properties(a, matrix, delta_max, tau_slice, t)
        return AugmentedMatrix(a, tau_slice, delta_max, t, matrix)

    @classmethod
    def augmented_at(cls, trace, t):
        return cls.build_augmented(trace.get_matrix(t), trace.get_delays().get_slice(t),
                                   trace.get_delta_max(), t)

    @classmethod
    def initial_support(cls, augmented, t0, alpha=None, lemma_checks=False, debug=None):
        matrix = augmented.get_matrix()
        if matrix.is_rational():
            numerators, denominator = matrix.get_scaled_integers()
            state = SupportState(t0, t0, augmented.get_base_n(), augmented.get_delta_max(),
                                 Scalar.MODE_RATIONAL, numerators.copy(), denominator, alpha,
                                 lemma_checks)
        else:
            state = SupportState(t0, t0, augmented.get_base_n(), augmented.get_delta_max(),
                                 Scalar.MODE_FLOAT, numpy.array(matrix.get_entries()), 1, alpha,
                                 lemma_checks)
        if cls._debug(debug) and lemma_checks:
            delta_max = augmented.get_delta_max()
            for j in range(1, augmented.get_base_n() + 1):
                if delta_max * j not in state.get_s_delta(j):
                    raise LemmaViolationError(f"Row {delta_max * j} is not in S_{j}^D at t0 = "
                                              f"{t0}")
        return state

    @classmethod
    def advance_support(cls, s, a_next, debug=None):
        if a_next.get_time() != s.get_time() + 1:
            raise DimensionError(f"Augmented matrix is for t = {a_next.get_time()}, expected "
                                 f"t = {s.get_time() + 1}")
        if a_next.get_matrix().get_n() != s.get_size():
            raise DimensionError(f"Augmented matrix has dimension {a_next.get_matrix().get_n()}, "
                                 f"expected {s.get_size()}")
        values, denominator = s.get_raw_values()
        matrix = a_next.get_matrix()
        if s.get_mode() == Scalar.MODE_RATIONAL:
            if not matrix.is_rational():
                raise DimensionError("Cannot advance a rational product with a float matrix")
            numerators, scale = matrix.get_scaled_integers()
            new_values = numerators.dot(values)
            new_denominator = denominator * scale
            divisor = math.gcd(new_denominator, *map(int, new_values.ravel()))
            if divisor > 1:
                new_values = numpy.array(
                    [[value // divisor for value in row] for row in new_values], dtype=object)
                new_denominator //= divisor
        else:
            new_values = matrix.to_float().get_entries().dot(values)
            new_denominator = 1
        after = SupportState(s.get_t0(), s.get_time() + 1, s.get_base_n(), s.get_delta_max(),
                             s.get_mode(), new_values, new_denominator, s.get_alpha(),
                             s.has_lemma_checks())
        if cls._debug(debug):
            cls._check_recurrences(s, after, a_next)
            if s.has_lemma_checks():
                cls._check_monotone(s, after)
        return after

    @staticmethod
    def stationarity_checks(s_before, s_after, g_next):
        """Checks what a stalled column support implies for the next communication graph."""
        n = s_before.get_base_n()
        delta_max = s_before.get_delta_max()
        columns = {}
        violations = []
        all_stalled = all(s_before.get_s_delta(j) == s_after.get_s_delta(j)
                          for j in range(1, n + 1))
        for j in range(1, n + 1):
            stalled = s_before.get_s_delta(j) == s_after.get_s_delta(j)
            s = s_before.get_s(j)
            edges = g_next.get_edges()
            has_incoming = any(i not in s and k in s for i, k in edges)
            has_outgoing = any(i in s and k not in s for i, k in edges)
            result = {
                DelaySystem.KEY_STALLED: stalled,
                DelaySystem.KEY_NO_INCOMING: None,
                DelaySystem.KEY_BLOCK_POSITIVE: None,
                DelaySystem.KEY_NO_OUTGOING: not has_outgoing,
                DelaySystem.KEY_PI_NON_DECREASING: None,
                DelaySystem.KEY_FULL_IF_ORIENTED: None
            }
            if stalled:
                result[DelaySystem.KEY_NO_INCOMING] = not has_incoming
                if has_incoming:
                    violations.append(f"t = {s_before.get_time()}: S_{j} is stalled but has an "
                                      f"incoming edge in the next graph")
                block_positive = all(
                    m in s_before.get_s_delta(j)
                    for i in s for m in range(delta_max * (i - 1) + 1, delta_max * i + 1))
                result[DelaySystem.KEY_BLOCK_POSITIVE] = block_positive
                if not block_positive:
                    violations.append(f"t = {s_before.get_time()}: S_{j} is stalled but a block "
                                      f"of column {delta_max * j} is not positive")
                if not has_outgoing:
                    non_decreasing = s_after.get_pi(j) >= s_before.get_pi(j)
                    result[DelaySystem.KEY_PI_NON_DECREASING] = non_decreasing
                    if not non_decreasing:
                        violations.append(f"t = {s_before.get_time()}: pi_{j} decreases while "
                                          f"S_{j} is stalled without outgoing edge")
            if all_stalled and GraphAnalysis.is_j_oriented(g_next, j):
                full = s_before.is_column_full(j)
                result[DelaySystem.KEY_FULL_IF_ORIENTED] = full
                if not full:
                    violations.append(f"t = {s_before.get_time()}: all supports are stalled, the "
                                      f"next graph is {j}-oriented, but column "
                                      f"{delta_max * j} is not full")
            columns[j] = result
        return {
            DelaySystem.KEY_T: s_before.get_time(),
            DelaySystem.KEY_HOLDS: len(violations) == 0,
            DelaySystem.KEY_COLUMNS: columns,
            DelaySystem.KEY_VIOLATIONS: violations
        }

    @staticmethod
    def column_support_by_paths(augmented_seq, j):
        """
        Rows m with a path in the augmented communication graphs from m to delta * j, with the
        k-th edge taken at time t0 + k. Returns one set per time step.
        """
        supports = []
        current = None
        for augmented in augmented_seq:
            current = DelaySystem.propagate_paths(augmented, j, current)
            supports.append(current)
        return supports

    @staticmethod
    def propagate_paths(augmented, j, current=None):
        """One step of column_support_by_paths: rows that reach a row of current in one edge."""
        pattern = augmented.get_matrix().get_pattern()
        if current is None:
            column = augmented.get_delta_max() * j - 1
            return frozenset(m + 1 for m in range(pattern.shape[0]) if pattern[m, column])
        return frozenset(m + 1 for m in range(pattern.shape[0])
                         if any(pattern[m, k - 1] for k in current))

    @classmethod
    def track_support(cls, trace, t0, until=None, debug=None):
        """Yields the support states for t0, t0 + 1, ..., until (default: the last time step)."""
        delta_max = trace.get_delta_max()
        if t0 < delta_max - 1:
            raise DelayError(f"The tracker starts at t0 >= delta - 1 = {delta_max - 1}, "
                             f"got t0 = {t0}")
        if until is None:
            until = trace.get_horizon() - 1
        if not t0 <= until < trace.get_horizon():
            raise TraceError(f"Trace of horizon {trace.get_horizon()} is too short for the window "
                             f"{t0}..{until}")
        debug = cls._debug(debug)
        lemma_checks = cls._has_a2(trace)
        state = cls.initial_support(cls.augmented_at(trace, t0), t0, trace.get_alpha(),
                                    lemma_checks, debug)
        yield state
        for t in range(t0 + 1, until + 1):
            augmented = cls.augmented_at(trace, t)
            after = cls.advance_support(state, augmented, debug)
            if debug and lemma_checks:
                report = cls.stationarity_checks(state, after, trace.get_graph(t))
                if not report[cls.KEY_HOLDS]:
                    raise LemmaViolationError("\n".join(report[cls.KEY_VIOLATIONS]))
            state = after
            yield state

    @classmethod
    def first_positive_column(cls, trace, t0, until=None, debug=None):
        n = trace.get_n()
        delta_max = trace.get_delta_max()
        theta = {j: None for j in range(1, n + 1)}
        cardinality = []
        debug = cls._debug(debug)
        path_check = debug and n * delta_max <= cls.PATH_CHECK_MAX_SIZE
        by_paths = {}
        last_time = t0
        for state in cls.track_support(trace, t0, until, debug):
            last_time = state.get_time()
            cardinality.append(state.get_cardinality())
            for j in state.get_full_columns():
                if theta[j] is None:
                    theta[j] = state.get_time()
            if path_check:
                augmented = cls.augmented_at(trace, state.get_time())
                for j in range(1, n + 1):
                    by_paths[j] = cls.propagate_paths(augmented, j, by_paths.get(j))
                    if by_paths[j] != state.get_s_delta(j):
                        raise LemmaViolationError(
                            f"Path propagation disagrees with S_{j}^D at t = {state.get_time()}")
            if all(map(lambda x: x is not None, theta.values())):
                break
        found = list(filter(lambda x: x is not None, theta.values()))
        return {
            cls.KEY_T0: t0,
            cls.KEY_HORIZON: last_time,
            cls.KEY_THETA: theta,
            cls.KEY_THETA_MAX: max(found) if len(found) == n else None,
            cls.KEY_CARDINALITY: cardinality
        }


if __name__ == "__main__":

    from tests.unit_tests.test_models.test_delay_system import TestDelaySystem

    TestDelaySystem().run(True)

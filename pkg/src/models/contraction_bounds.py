"""
Checks of the contraction bounds on exact augmented products P(t) = A^D(t) ... A^D(t0).

    coordinated:   at t0 + k, k = D N^2 - 2N + 1:  seminorm <= 1 - alpha^k
    decentralized: at theta = max_j theta_j:       seminorm <= 1 - N alpha^(D N)
    granular:      at theta:                       seminorm <= 1 - N alpha^(phi D N)
    partial:       at theta_j0:                    seminorm <= 1 - alpha^(D N)

theta_j is the first time column D j of P is positive. Only rational traces are accepted.
"""

from src.app_data import AppData
from src.models.delay_system import DelaySystem
from src.models.errors import CapabilityError
from src.models.errors import TraceError
from src.models.matrix_core import MatrixCore
from src.models.monitors import Monitors
from src.models.scalar import Scalar


class BoundReport:

    STATUS_VERIFIED = "verified"
    STATUS_VIOLATED = "violated"
    STATUS_INCONCLUSIVE = "inconclusive"

    KEY_BOUND = "bound"
    KEY_CHECKPOINT = "checkpoint"
    KEY_DETAILS = "details"
    KEY_MEASURED = "measured"
    KEY_MESSAGE = "message"
    KEY_MODE = "mode"
    KEY_SCHEMA = "schema"
    KEY_STATUS = "status"
    KEY_T0 = "t0"

    def __init__(self, mode, t0, checkpoint, measured, bound, status, message, details=None):
        self._mode = mode
        self._t0 = t0
        self._checkpoint = checkpoint
        self._measured = measured
        self._bound = bound
        self._status = status
        self._message = message
        self._details = {} if details is None else dict(details)

    ##########
    # Public #
    ##########

    def get_mode(self):
        return self._mode

    def get_t0(self):
        return self._t0

    def get_checkpoint(self):
        return self._checkpoint

    def get_measured(self):
        return self._measured

    def get_bound(self):
        return self._bound

    def get_status(self):
        return self._status

    def is_verified(self):
        return self._status == self.STATUS_VERIFIED

    def is_inconclusive(self):
        return self._status == self.STATUS_INCONCLUSIVE

    def get_message(self):
        return self._message

    def get_details(self):
        return self._details

    def to_dict(self):
        return {
            self.KEY_SCHEMA: AppData.SCHEMA,
            self.KEY_MODE: self._mode,
            self.KEY_T0: self._t0,
            self.KEY_CHECKPOINT: self._checkpoint,
            self.KEY_MEASURED: None if self._measured is None else Scalar.to_json(self._measured),
            self.KEY_BOUND: None if self._bound is None else Scalar.to_json(self._bound),
            self.KEY_STATUS: self._status,
            self.KEY_MESSAGE: self._message,
            self.KEY_DETAILS: dict(self._details)
        }


class ContractionBounds:

    MODE_COORDINATED = "coordinated"
    MODE_DECENTRALIZED = "decentralized"
    MODE_GRANULAR = "granular"
    MODE_PARTIAL = "partial"
    MODES = [MODE_COORDINATED, MODE_DECENTRALIZED, MODE_GRANULAR, MODE_PARTIAL]

    KEY_CARDINALITY = "cardinality"
    KEY_CARDINALITY_HOLDS = "cardinality_holds"
    KEY_EXPONENT = "exponent"
    KEY_FULL_COLUMNS = "full_columns"
    KEY_J0 = "j0"
    KEY_PHI = "phi"
    KEY_PI_CHECKED_UNTIL = "pi_checked_until"
    KEY_PI_FLOOR_HOLDS = "pi_floor_holds"
    KEY_PI_MIN = "pi_min"
    KEY_THETA = "theta"

    MESSAGE_EXTEND_HORIZON = "inconclusive: extend horizon"

    def __init__(self):
        raise RuntimeError("No instance of this class is permitted")

    ###########
    # Private #
    ###########

    @staticmethod
    def _check_trace(trace, t0):
        if not trace.is_rational():
            raise CapabilityError("Bound verification needs an exact rational trace, regenerate "
                                  "the scenario with mode 'rational'")
        if t0 < trace.get_delta_max() - 1:
            raise TraceError(f"t0 must be at least delta - 1 = {trace.get_delta_max() - 1}, "
                             f"got {t0}")
        if t0 >= trace.get_horizon():
            raise TraceError(f"t0 = {t0} is beyond the trace horizon {trace.get_horizon()}")

    @staticmethod
    def _compare(mode, t0, checkpoint, measured, bound, details):
        holds = measured <= bound
        status = BoundReport.STATUS_VERIFIED if holds else BoundReport.STATUS_VIOLATED
        relation = "<=" if holds else ">"
        message = (f"seminorm {Scalar.to_text(measured)} {relation} bound "
                   f"{Scalar.to_text(bound)} at t = {checkpoint}")
        return BoundReport(mode, t0, checkpoint, measured, bound, status, message, details)

    @classmethod
    def _inconclusive(cls, mode, t0, checkpoint, bound, details, reason):
        return BoundReport(mode, t0, checkpoint, None, bound, BoundReport.STATUS_INCONCLUSIVE,
                           f"{cls.MESSAGE_EXTEND_HORIZON} ({reason})", details)

    @classmethod
    def _track_until_full(cls, trace, t0, columns, extra_steps, debug):
        """
        Tracks the support from t0 until every column in columns is full, then extra_steps more,
        keeping the smallest pi_j of those columns. Returns (theta per column, state at the last
        theta, pi minimum, checked until).
        """
        theta = {j: None for j in columns}
        theta_state = None
        pi_min = None
        stop_at = None
        last_time = t0
        for state in DelaySystem.track_support(trace, t0, None, debug):
            last_time = state.get_time()
            for j in columns:
                if theta[j] is None and state.is_column_full(j):
                    theta[j] = state.get_time()
            if stop_at is None and all(map(lambda x: x is not None, theta.values())):
                theta_state = state
                stop_at = state.get_time() + extra_steps
            if stop_at is not None:
                for j in columns:
                    pi = state.get_pi(j)
                    pi_min = pi if pi_min is None else min(pi_min, pi)
                if state.get_time() >= stop_at:
                    break
        return theta, theta_state, pi_min, last_time

    @classmethod
    def _verify_at_theta(cls, mode, trace, t0, bound, exponent, columns, debug, details):
        n = trace.get_n()
        floor = trace.get_alpha() ** exponent
        size = n * trace.get_delta_max()
        theta, state, pi_min, checked_until = cls._track_until_full(
            trace, t0, columns, size, debug)
        details[cls.KEY_EXPONENT] = exponent
        details[cls.KEY_THETA] = {str(j): t for j, t in theta.items()}
        details[cls.KEY_PI_MIN] = None if pi_min is None else Scalar.to_json(pi_min)
        details[cls.KEY_PI_CHECKED_UNTIL] = checked_until if state is not None else None
        details[cls.KEY_PI_FLOOR_HOLDS] = pi_min is not None and pi_min >= floor
        if state is None:
            return cls._inconclusive(mode, t0, None, bound, details,
                                     f"no theta found up to t = {trace.get_horizon() - 1}")
        measured = MatrixCore.seminorm(state.get_product())
        return cls._compare(mode, t0, state.get_time(), measured, bound, details)

    ##########
    # Public #
    ##########

    @classmethod
    def verify_coordinated_bound(cls, trace, t0, debug=None):
        cls._check_trace(trace, t0)
        n = trace.get_n()
        delta_max = trace.get_delta_max()
        k = delta_max * n * n - 2 * n + 1
        checkpoint = t0 + k
        bound = 1 - trace.get_alpha() ** k
        details = {cls.KEY_EXPONENT: k}
        if checkpoint >= trace.get_horizon():
            return cls._inconclusive(cls.MODE_COORDINATED, t0, checkpoint, bound, details,
                                     f"checkpoint {checkpoint} beyond the last step "
                                     f"{trace.get_horizon() - 1}")
        cardinality = []
        cardinality_holds = True
        state = None
        for state in DelaySystem.track_support(trace, t0, checkpoint, debug):
            cardinality.append(state.get_cardinality())
            # While no column is full the support grows by at least one pair per step
            if len(state.get_full_columns()) == 0 and \
                    state.get_cardinality() < n + state.get_time() - t0:
                cardinality_holds = False
        full = state.get_full_columns()
        details[cls.KEY_CARDINALITY] = cardinality
        details[cls.KEY_CARDINALITY_HOLDS] = cardinality_holds
        details[cls.KEY_FULL_COLUMNS] = full
        details[cls.KEY_PI_FLOOR_HOLDS] = \
            len(full) > 0 and max(map(state.get_pi, full)) >= trace.get_alpha() ** k
        measured = MatrixCore.seminorm(state.get_product())
        return cls._compare(cls.MODE_COORDINATED, t0, checkpoint, measured, bound, details)

    @classmethod
    def verify_decentralized_bound(cls, trace, t0, debug=None):
        cls._check_trace(trace, t0)
        n = trace.get_n()
        exponent = trace.get_delta_max() * n
        bound = 1 - n * trace.get_alpha() ** exponent
        return cls._verify_at_theta(cls.MODE_DECENTRALIZED, trace, t0, bound, exponent,
                                    list(range(1, n + 1)), debug, {})

    @classmethod
    def verify_granular_bound(cls, trace, t0, phi, debug=None):
        cls._check_trace(trace, t0)
        if phi is None or phi < 1:
            raise TraceError(f"Phi must be a positive integer, got {phi}")
        n = trace.get_n()
        exponent = phi * trace.get_delta_max() * n
        bound = 1 - n * trace.get_alpha() ** exponent
        return cls._verify_at_theta(cls.MODE_GRANULAR, trace, t0, bound, exponent,
                                    list(range(1, n + 1)), debug, {cls.KEY_PHI: phi})

    @classmethod
    def verify_partial_bound(cls, trace, t0, j0=None, debug=None):
        cls._check_trace(trace, t0)
        if j0 is None:
            j0 = Monitors.check_dstar(trace).get_detail(Monitors.KEY_J)
            if j0 is None:
                raise TraceError("The trace has no fixed agent for the partial bound, pass j0")
        if not 1 <= j0 <= trace.get_n():
            raise TraceError(f"Agent j0 = {j0} is not in 1..{trace.get_n()}")
        exponent = trace.get_delta_max() * trace.get_n()
        bound = 1 - trace.get_alpha() ** exponent
        return cls._verify_at_theta(cls.MODE_PARTIAL, trace, t0, bound, exponent, [j0], debug,
                                    {cls.KEY_J0: j0})

    @classmethod
    def verify(cls, mode, trace, t0, phi=None, j0=None, debug=None):
        if mode == cls.MODE_COORDINATED:
            return cls.verify_coordinated_bound(trace, t0, debug)
        if mode == cls.MODE_DECENTRALIZED:
            return cls.verify_decentralized_bound(trace, t0, debug)
        if mode == cls.MODE_GRANULAR:
            return cls.verify_granular_bound(trace, t0, phi, debug)
        if mode == cls.MODE_PARTIAL:
            return cls.verify_partial_bound(trace, t0, j0, debug)
        raise TraceError(f"Unknown bound mode '{mode}', expected one of {cls.MODES}")


if __name__ == "__main__":

    from tests.unit_tests.test_models.test_contraction_bounds import TestContractionBounds

    TestContractionBounds().run(True)

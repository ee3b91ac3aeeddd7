"""
Test the contraction bound checks on exact products.
"""

from fractions import Fraction

from src.models.contraction_bounds import BoundReport
from src.models.contraction_bounds import ContractionBounds
from src.models.errors import CapabilityError
from src.models.errors import TraceError
from src.models.scenario_trace import ScenarioTrace
from tests.test_environment.test_traces import CHAIN_3
from tests.test_environment.test_traces import HALF
from tests.test_environment.test_traces import TWO_PAIRS
from tests.test_environment.test_traces import constant_trace
from tests.unit_tests.lib.test_suite import TestSuite


class TestContractionBounds(TestSuite):

    _UNIFORM_2 = [[HALF, HALF], [HALF, HALF]]
    _PAIR_EVEN = [[1, 0], [HALF, HALF]]
    _PAIR_ODD = [[HALF, HALF], [0, 1]]

    def test_coordinated(self):
        report = ContractionBounds.verify_coordinated_bound(constant_trace(CHAIN_3, 6), 0)
        self.fail_if(not report.is_verified(), f"Bound not verified: {report.get_message()}")
        self.fail_if(report.get_checkpoint() != 4, "Checkpoint is not t0 + 4")
        self.fail_if(report.get_bound() != Fraction(15, 16), "Bound is not 1 - alpha^4")
        self.fail_if(report.get_measured() != Fraction(3, 16), "Seminorm of A^5 is not 3/16")
        details = report.get_details()
        self.fail_if(details[ContractionBounds.KEY_EXPONENT] != 4, "Exponent incorrect")
        self.fail_if(len(details[ContractionBounds.KEY_CARDINALITY]) != 5,
                     "Cardinality not recorded at every step")
        self.fail_if(details[ContractionBounds.KEY_CARDINALITY][0] != 5,
                     "Initial cardinality is not the number of positive entries")
        self.fail_if(not details[ContractionBounds.KEY_CARDINALITY_HOLDS], "Cardinality check")
        self.fail_if(details[ContractionBounds.KEY_FULL_COLUMNS] != [1], "Full columns incorrect")
        self.fail_if(not details[ContractionBounds.KEY_PI_FLOOR_HOLDS], "Floor check fails")

    def test_coordinated_uniform(self):
        trace = constant_trace(self._UNIFORM_2, 3)
        report = ContractionBounds.verify(ContractionBounds.MODE_COORDINATED, trace, 0)
        self.fail_if(report.get_checkpoint() != 1 or report.get_bound() != HALF,
                     "Checkpoint or bound incorrect")
        self.fail_if(report.get_measured() != 0, "Seminorm of a rank one product is not 0")

    def test_coordinated_short(self):
        report = ContractionBounds.verify_coordinated_bound(constant_trace(CHAIN_3, 4), 0)
        self.fail_if(not report.is_inconclusive(), "Short trace is not inconclusive")
        self.fail_if(report.get_measured() is not None, "Inconclusive report has a value")
        message = report.get_message()
        self.fail_if(not message.startswith(ContractionBounds.MESSAGE_EXTEND_HORIZON),
                     f"Message is '{report.get_message()}'")

    def test_decentralized(self):
        trace = constant_trace(self._UNIFORM_2, 8, 2)
        report = ContractionBounds.verify_decentralized_bound(trace, 1)
        self.fail_if(not report.is_verified(), f"Bound not verified: {report.get_message()}")
        self.fail_if(report.get_bound() != Fraction(7, 8), "Bound is not 1 - N alpha^(DN)")
        self.fail_if(report.get_checkpoint() != 2, "Checkpoint is not theta")
        details = report.get_details()
        self.fail_if(details[ContractionBounds.KEY_THETA] != {"1": 2, "2": 2}, "Theta incorrect")
        self.fail_if(details[ContractionBounds.KEY_PI_CHECKED_UNTIL] != 6,
                     "Floor not checked for N D steps after theta")
        self.fail_if(not details[ContractionBounds.KEY_PI_FLOOR_HOLDS], "Floor check fails")

    def test_decentralized_not_reached(self):
        identity = constant_trace([[1, 0], [0, 1]], 5)
        report = ContractionBounds.verify_decentralized_bound(identity, 0)
        self.fail_if(not report.is_inconclusive(), "Identity trace is not inconclusive")
        self.fail_if(report.get_checkpoint() is not None, "Checkpoint without theta")

    def test_granular(self):
        trace = ScenarioTrace.from_rows([self._PAIR_EVEN, self._PAIR_ODD] * 5, period=2)
        report = ContractionBounds.verify_granular_bound(trace, 0, 2)
        self.fail_if(report.get_bound() != Fraction(7, 8), "Bound is not 1 - N alpha^(phi DN)")
        self.fail_if(report.get_details()[ContractionBounds.KEY_THETA] != {"1": 0, "2": 1},
                     "Theta incorrect")
        self.fail_if(report.get_measured() != Fraction(1, 4), "Seminorm at theta is not 1/4")
        self.fail_if(not report.is_verified(), "Bound not verified")
        try:
            ContractionBounds.verify_granular_bound(trace, 0, None)
            self.fail("Granular bound without phi was accepted")
        except TraceError as e:
            self.log.debug(f"Error message: {e}")

    def test_partial(self):
        report = ContractionBounds.verify_partial_bound(constant_trace(CHAIN_3, 8), 0)
        self.fail_if(report.get_details()[ContractionBounds.KEY_J0] != 1, "Fixed agent is not 1")
        self.fail_if(report.get_checkpoint() != 1, "Checkpoint is not theta_1")
        self.fail_if(report.get_bound() != Fraction(7, 8), "Bound is not 1 - alpha^(DN)")
        self.fail_if(report.get_measured() != Fraction(3, 4), "Seminorm of A^2 is not 3/4")
        for trace, j0 in [(constant_trace(CHAIN_3, 8), 4), (constant_trace(TWO_PAIRS, 4), None)]:
            try:
                ContractionBounds.verify_partial_bound(trace, 0, j0)
                self.fail(f"Partial bound with j0 = {j0} was accepted")
            except TraceError as e:
                self.log.debug(f"Error message: {e}")

    def test_invalid(self):
        try:
            ContractionBounds.verify_decentralized_bound(constant_trace(CHAIN_3, 4).to_float(), 0)
            self.fail("Float trace was accepted")
        except CapabilityError as e:
            self.log.debug(f"Error message: {e}")
        trace = constant_trace(self._UNIFORM_2, 4, 2)
        for call in [lambda: ContractionBounds.verify_coordinated_bound(trace, 0),
                     lambda: ContractionBounds.verify_coordinated_bound(trace, 4),
                     lambda: ContractionBounds.verify("uniform", trace, 1)]:
            try:
                call()
                self.fail("Invalid bound request was accepted")
            except TraceError as e:
                self.log.debug(f"Error message: {e}")

    def test_report(self):
        report = BoundReport(ContractionBounds.MODE_PARTIAL, 0, 3, Fraction(1, 2),
                             Fraction(3, 4), BoundReport.STATUS_VIOLATED, "message", {"j0": 1})
        d = report.to_dict()
        expected = {"schema": "v1", "mode": "partial", "t0": 0, "checkpoint": 3,
                    "measured": "1/2", "bound": "3/4", "status": "violated",
                    "message": "message", "details": {"j0": 1}}
        self.fail_if(d != expected, f"Report dict is {d}")
        self.fail_if(report.is_verified() or report.is_inconclusive(), "Status incorrect")


if __name__ == "__main__":

    TestContractionBounds().run(True)

"""
Granular bound on the two-periodic pair: single steps are not completely reducible, products of
two steps are, and the seminorm at theta stays below 1 - n * alpha^(phi * delta * n).
"""

from fractions import Fraction

from src.models.contraction_bounds import ContractionBounds
from src.models.monitors import Monitors
from src.models.scenarios import Scenarios
from src.models.scenarios.generator_spec import GeneratorSpec
from tests.unit_tests.lib.test_suite import TestSuite


class TestGranularBound(TestSuite):

    _PHI = 2

    def setup(self):
        self._trace = Scenarios.construct_granular_pair(GeneratorSpec("granular_pair", 2,
                                                                      horizon=24))

    def test_conditions(self):
        self.fail_if(not Monitors.check_d2(self._trace).fails(), "Single steps are completely "
                                                                 "reducible")
        report = Monitors.search_diamond(self._trace, Monitors.KIND_D2)
        self.fail_if(report.get_parameters()[Monitors.KEY_PHI] != self._PHI,
                     f"Smallest phi is {report.get_parameters()[Monitors.KEY_PHI]}")
        self.fail_if(not Monitors.check_positive_products(self._trace, self._PHI).holds(),
                     "Products of two steps are not positive")

    def test_granular_bound(self):
        expected_bound = 1 - 2 * Fraction(1, 2) ** (self._PHI * 2)
        for t0 in range(8):
            report = ContractionBounds.verify_granular_bound(self._trace, t0, self._PHI,
                                                             debug=True)
            self.fail_if(not report.is_verified(), f"t0 = {t0}: {report.get_message()}")
            self.fail_if(report.get_bound() != expected_bound, f"Bound {report.get_bound()}")
            self.fail_if(report.get_checkpoint() > t0 + self._PHI,
                         f"t0 = {t0}: theta {report.get_checkpoint()} later than one window")
            self.fail_if(not report.get_details()[ContractionBounds.KEY_PI_FLOOR_HOLDS],
                         f"t0 = {t0}: pi below the floor")

    def test_measured_value(self):
        report = ContractionBounds.verify_granular_bound(self._trace, 0, self._PHI, debug=True)
        self.fail_if(report.get_measured() != Fraction(1, 4),
                     f"Seminorm at theta is {report.get_measured()}")
        self.fail_if(report.get_details()[ContractionBounds.KEY_THETA] != {"1": 0, "2": 1},
                     f"Theta is {report.get_details()[ContractionBounds.KEY_THETA]}")


if __name__ == "__main__":

    TestGranularBound().run(True)

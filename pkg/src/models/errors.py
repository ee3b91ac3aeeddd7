"""
Exceptions raised by the models.

Domain negatives (a condition that does not hold, a trajectory that does not converge) are never
raised, they are returned in reports. Exceptions are for invalid input and for broken invariants.
"""


class ConsensusLabError(Exception):
    pass


class DimensionError(ConsensusLabError):
    pass


class CapabilityError(ConsensusLabError):
    pass


class EnumerationCapError(ConsensusLabError):
    pass


class ToleranceError(ConsensusLabError):
    pass


class StochasticityError(ConsensusLabError):
    pass


class DelayError(ConsensusLabError):
    pass


class TraceError(ConsensusLabError):
    pass


class ScenarioError(ConsensusLabError):
    pass


class TraceFileError(ConsensusLabError):
    pass


class UsageError(ConsensusLabError):
    pass


class LemmaViolationError(ConsensusLabError):
    """Raised by the debug checks of the support tracker. This is a bug, not a domain result."""


if __name__ == "__main__":

    from tests.unit_tests.test_models.test_errors import TestErrors

    TestErrors().run(True)

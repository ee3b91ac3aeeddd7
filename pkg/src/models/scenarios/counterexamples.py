"""
The two non-converging traces on three agents without delays.

permutation: a 3-periodic sequence without self-loops on agents 2 and 3, that keeps swapping
x_1 and x_3 every period.

shifting: A(t) cycles through A_1, A_2, A_3 where in A_k one agent averages its value with one
partner. Phase n uses A_((n - 1) mod 3 + 1) and lasts the minimal number of steps to reach its
target. Even phases raise the designated agent to at least 1 - L_m, odd phases from 3 on lower it
to at most L_m, with m = n // 2 and L_m the sum of the first m eps values. Phase 1 is a single
step that keeps x(0) = (0, 1, 0).
"""

from fractions import Fraction

from src.models.errors import ScenarioError
from src.models.scalar import Scalar
from src.models.scenario_trace import ScenarioTrace
from src.models.stochastic_matrix import StochasticMatrix


HALF = Fraction(1, 2)

PERMUTATION_ROWS = [
    [[1, 0, 0], [0, 0, 1], [0, 1, 0]],
    [[0, 0, 1], [0, 1, 0], [1, 0, 0]],
    [[0, 1, 0], [1, 0, 0], [0, 0, 1]]
]

SHIFTING_ROWS = {
    1: [[HALF, 0, HALF], [0, 1, 0], [0, 0, 1]],
    2: [[1, 0, 0], [0, 1, 0], [0, HALF, HALF]],
    3: [[1, 0, 0], [HALF, HALF, 0], [0, 0, 1]]
}

# Matrix index: (agent that averages, partner it hears of)
SHIFTING_AGENTS = {
    1: (1, 3),
    2: (3, 2),
    3: (2, 1)
}

SHIFTING_X0 = (0, 1, 0)
DEFAULT_PERMUTATION_HORIZON = 6
DEFAULT_PHASES = 6
DEFAULT_EPS_SUM = Fraction(2, 5)
MAX_PHASE_LENGTH = 10000

KEY_EPS = "eps"
KEY_PHASE_LENGTHS = "phase_lengths"
KEY_PHASES = "phases"


class Counterexamples:

    def __init__(self):
        raise RuntimeError("No instance of this class is permitted")

    ###########
    # Private #
    ###########

    @staticmethod
    def _eps_schedule(eps_schedule, phases):
        needed = phases // 2
        if eps_schedule is None:
            return [DEFAULT_EPS_SUM / 2 ** m for m in range(1, needed + 1)], False
        eps = list(map(Scalar.to_fraction, eps_schedule))
        if any(map(lambda x: x <= 0, eps)):
            raise ScenarioError("All eps values must be positive")
        if sum(eps) >= HALF:
            raise ScenarioError(f"The eps values sum to {Scalar.to_text(sum(eps))}, which is not "
                                f"below 1/2")
        if len(eps) < needed:
            raise ScenarioError(f"{phases} phases need {needed} eps values, got {len(eps)}")
        return eps, True

    @staticmethod
    def _reached(phase, value, bound):
        if phase == 1:
            return True
        if phase % 2 == 0:
            return value >= 1 - bound
        return value <= bound

    ##########
    # Public #
    ##########

    @staticmethod
    def permutation(horizon=DEFAULT_PERMUTATION_HORIZON):
        if horizon < 1:
            raise ScenarioError(f"Horizon must be at least 1, got {horizon}")
        matrices = list(map(StochasticMatrix, PERMUTATION_ROWS))
        metadata = {
            ScenarioTrace.KEY_FAMILY: "permutation",
            ScenarioTrace.KEY_SEED: None,
            ScenarioTrace.KEY_OPTIONS: {ScenarioTrace.KEY_HORIZON: horizon}
        }
        return ScenarioTrace(3, 1, 1, [matrices[t % 3] for t in range(horizon)], None,
                             [ScenarioTrace.FLAG_VIOLATES_A2], 3, metadata)

    @classmethod
    def shifting(cls, eps_schedule=None, phases=DEFAULT_PHASES):
        if phases < 1:
            raise ScenarioError(f"Number of phases must be at least 1, got {phases}")
        eps, custom = cls._eps_schedule(eps_schedule, phases)
        matrices = {k: StochasticMatrix(rows) for k, rows in SHIFTING_ROWS.items()}
        x = list(map(Fraction, SHIFTING_X0))
        sequence = []
        phase_lengths = []
        for phase in range(1, phases + 1):
            k = (phase - 1) % 3 + 1
            agent, partner = SHIFTING_AGENTS[k]
            bound = sum(eps[:phase // 2])
            length = 0
            while True:
                x[agent - 1] = (x[agent - 1] + x[partner - 1]) / 2
                sequence.append(matrices[k])
                length += 1
                if cls._reached(phase, x[agent - 1], bound):
                    break
                if length >= MAX_PHASE_LENGTH:
                    raise ScenarioError(f"Phase {phase} does not reach its target within "
                                        f"{MAX_PHASE_LENGTH} steps")
            phase_lengths.append(length)
        options = {KEY_PHASES: phases}
        if custom:
            options[KEY_EPS] = list(map(Scalar.to_text, eps))
        metadata = {
            ScenarioTrace.KEY_FAMILY: "shifting",
            ScenarioTrace.KEY_SEED: None,
            ScenarioTrace.KEY_OPTIONS: options,
            KEY_PHASE_LENGTHS: phase_lengths
        }
        return ScenarioTrace(3, 1, HALF, sequence, None, (), None, metadata)

    @staticmethod
    def get_phase_boundaries(trace):
        """Times t_1 < t_2 < ... at which the phases of a shifting trace end."""
        boundaries = []
        t = 0
        for length in trace.get_metadata()[KEY_PHASE_LENGTHS]:
            t += length
            boundaries.append(t)
        return boundaries


if __name__ == "__main__":

    from tests.unit_tests.test_models.test_counterexamples import TestCounterexamples

    TestCounterexamples().run(True)

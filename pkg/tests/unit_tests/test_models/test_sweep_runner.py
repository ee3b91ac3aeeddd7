"""
Test the seed sweep runner.
"""

from src.models.sweep_runner import SweepRunner
from tests.unit_tests.lib.test_suite import TestSuite


class TestSweepRunner(TestSuite):

    @staticmethod
    def _job(seed):
        if seed % 3 == 2:
            raise ValueError(f"seed {seed} rejected")
        return seed * seed

    def test_run(self):
        runner = SweepRunner(lambda x: x * x, range(10), workers=3)
        results = runner.run()
        self.fail_if(results != {x: x * x for x in range(10)}, f"Results are {results}")
        self.fail_if(list(results) != list(range(10)), "Results are not sorted by seed")
        self.fail_if(runner.get_errors() != {}, "Errors without failing jobs")
        self.fail_if(runner.is_running(), "Runner still running after run")

    def test_errors(self):
        runner = SweepRunner(self._job, range(6), workers=2)
        results = runner.run()
        self.fail_if(list(results) != [0, 1, 3, 4], f"Results for seeds {list(results)}")
        errors = runner.get_errors()
        self.fail_if(list(errors) != [2, 5], f"Errors for seeds {list(errors)}")
        self.fail_if(not isinstance(errors[2], ValueError), "Exception not kept")

    def test_callback(self):
        messages = []
        runner = SweepRunner(self._job, range(6),
                             lambda t, message_type, identifier, value: messages.append(
                                 (message_type, identifier, value)), 2)
        runner.run()
        types = list(map(lambda x: x[0], messages))
        self.fail_if(types[0] != SweepRunner.MESSAGE_TYPE_STATUS_START, "First message not start")
        self.fail_if(types[-1] != SweepRunner.MESSAGE_TYPE_STATUS_FINISHED,
                     "Last message not finished")
        self.fail_if(types.count(SweepRunner.MESSAGE_TYPE_VALUE) != 4, "Value messages missing")
        self.fail_if(types.count(SweepRunner.MESSAGE_TYPE_STATUS_ERROR) != 2,
                     "Error messages missing")
        self.fail_if(messages[0][2] != 6 or messages[-1][2] != 4,
                     "Start or finish counts incorrect")

    def test_workers(self):
        self.fail_if(SweepRunner(abs, [1, 2], workers=8).get_workers() != 2,
                     "Workers not limited to the number of seeds")
        self.fail_if(SweepRunner(abs, [1, 2], workers=0).get_workers() != 1,
                     "Zero workers not raised to one")
        self.fail_if(SweepRunner(abs, [], workers=4).run() != {}, "Empty sweep has results")

    def test_parse_seeds(self):
        cases = [("0..3", [0, 1, 2, 3]), ("5", [5]), ("1,4, 7", [1, 4, 7]), (" 2..2 ", [2])]
        for text, expected in cases:
            self.fail_if(SweepRunner.parse_seeds(text) != expected, f"Seeds of '{text}'")
        for text in ["3..1", "a..b", "1;2"]:
            try:
                SweepRunner.parse_seeds(text)
                self.fail(f"Seeds '{text}' were accepted")
            except ValueError as e:
                self.log.debug(f"Error message: {e}")


if __name__ == "__main__":

    TestSweepRunner().run(True)

"""
Pytest collection wiring for the lily-unit-test test suites.

The tests are lily_unit_test.TestSuite classes (normally run by tests/run_*.py through the lily
TestRunner). Pytest cannot collect them because they define __init__, so each suite class is
collected here as one item and executed with the lily TestSuite.run() method.
"""

import inspect

import lily_unit_test
import pytest

from tests.test_environment.setup_environment import setup_user_folder


EXCLUDE_TEST_SUITES = ["TestSuite"]


def pytest_sessionstart(session):
    setup_user_folder()


class LilyTestSuiteItem(pytest.Item):

    def __init__(self, *, suite_class, **kwargs):
        super().__init__(**kwargs)
        self.suite_class = suite_class
        self._log_messages = []

    def runtest(self):
        suite = self.suite_class()
        result = suite.run(log_traceback=True)
        self._log_messages = suite.log.get_log_messages()
        if not result:
            raise LilyTestSuiteFailure(self.name)

    def repr_failure(self, excinfo, style=None):
        if isinstance(excinfo.value, LilyTestSuiteFailure):
            return "\n".join(str(m) for m in self._log_messages)
        return super().repr_failure(excinfo, style)

    def reportinfo(self):
        return self.path, 0, f"lily test suite: {self.name}"


class LilyTestSuiteFailure(Exception):
    pass


class LilyModule(pytest.Module):

    def collect(self):
        module = self.obj
        for name, obj in vars(module).items():
            if (inspect.isclass(obj) and issubclass(obj, lily_unit_test.TestSuite) and
                    obj.__module__ == module.__name__ and name not in EXCLUDE_TEST_SUITES):
                yield LilyTestSuiteItem.from_parent(self, name=name, suite_class=obj)


def pytest_pycollect_makemodule(module_path, parent):
    return LilyModule.from_parent(parent, path=module_path)

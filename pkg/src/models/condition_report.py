"""
Outcome of a condition check on a finite trace.
"""

from src.app_data import AppData
from src.models.errors import ConsensusLabError


class ConditionReport:

    VERDICT_HOLDS = "holds"
    VERDICT_FAILS = "fails"
    VERDICT_WITNESSED = "witnessed"
    VERDICT_INCONCLUSIVE = "inconclusive"
    VERDICTS = [VERDICT_HOLDS, VERDICT_FAILS, VERDICT_WITNESSED, VERDICT_INCONCLUSIVE]

    KEY_CONDITION = "condition"
    KEY_DETAILS = "details"
    KEY_FIRST_VIOLATION = "first_violation"
    KEY_NOTES = "notes"
    KEY_PARAMETERS = "parameters"
    KEY_REASON = "reason"
    KEY_SCHEMA = "schema"
    KEY_T = "t"
    KEY_VERDICT = "verdict"

    def __init__(self, condition, verdict, first_violation=None, parameters=None, details=None,
                 notes=None):
        if verdict not in self.VERDICTS:
            raise ConsensusLabError(f"Invalid verdict '{verdict}'")
        if verdict == self.VERDICT_FAILS and first_violation is None:
            raise ConsensusLabError(f"A failing {condition} report needs a violation witness")
        self._condition = condition
        self._verdict = verdict
        self._first_violation = first_violation
        self._parameters = {} if parameters is None else dict(parameters)
        self._details = {} if details is None else dict(details)
        self._notes = [] if notes is None else list(notes)

    ##########
    # Public #
    ##########

    def get_condition(self):
        return self._condition

    def get_verdict(self):
        return self._verdict

    def holds(self):
        return self._verdict in (self.VERDICT_HOLDS, self.VERDICT_WITNESSED)

    def fails(self):
        return self._verdict == self.VERDICT_FAILS

    def get_first_violation(self):
        return self._first_violation

    def get_violation_time(self):
        return None if self._first_violation is None else self._first_violation[0]

    def get_parameters(self):
        return dict(self._parameters)

    def get_details(self):
        return self._details

    def get_detail(self, key, default=None):
        return self._details.get(key, default)

    def get_notes(self):
        return list(self._notes)

    def add_note(self, note):
        self._notes.append(note)

    def get_summary(self):
        if self._verdict == self.VERDICT_FAILS:
            return f"{self._condition}: fail@{self._first_violation[0]}"
        if self._verdict == self.VERDICT_HOLDS:
            return f"{self._condition}: hold"
        return f"{self._condition}: {self._verdict}"

    def to_dict(self):
        first_violation = None
        if self._first_violation is not None:
            first_violation = {
                self.KEY_T: self._first_violation[0],
                self.KEY_REASON: self._first_violation[1]
            }
        return {
            self.KEY_SCHEMA: AppData.SCHEMA,
            self.KEY_CONDITION: self._condition,
            self.KEY_VERDICT: self._verdict,
            self.KEY_FIRST_VIOLATION: first_violation,
            self.KEY_PARAMETERS: dict(self._parameters),
            self.KEY_DETAILS: dict(self._details),
            self.KEY_NOTES: list(self._notes)
        }


if __name__ == "__main__":

    from tests.unit_tests.test_models.test_condition_report import TestConditionReport

    TestConditionReport().run(True)

"""
Reading and writing scenario traces and reports as JSON files.
"""

import json

from src.models.errors import TraceFileError
from src.models.scenario_trace import ScenarioTrace


class TraceFile:

    def __init__(self):
        raise RuntimeError("No instance of this class is permitted")

    ##########
    # Public #
    ##########

    @staticmethod
    def read_json(filename):
        try:
            with open(filename, "r", encoding="utf-8") as fp:
                data = json.load(fp)
        except json.decoder.JSONDecodeError as e:
            raise TraceFileError(f"Error reading file: {filename}:\n{e}") from e
        except OSError as e:
            raise TraceFileError(f"Error opening file: {filename}:\n{e}") from e
        if not isinstance(data, dict):
            raise TraceFileError(f"Error reading file: {filename}:\nexpected a JSON object")
        return data

    @staticmethod
    def write_json(filename, data):
        with open(filename, "w", encoding="utf-8") as fp:
            json.dump(data, fp, indent=2)

    @classmethod
    def load(cls, filename):
        data = cls.read_json(filename)
        try:
            return ScenarioTrace.from_dict(data)
        except TraceFileError as e:
            raise TraceFileError(f"Error reading file: {filename}:\n{e}") from e

    @classmethod
    def save(cls, trace, filename):
        cls.write_json(filename, trace.to_dict())


if __name__ == "__main__":

    from tests.unit_tests.test_models.test_trace_file import TestTraceFile

    TestTraceFile().run(True)

"""
Export of trajectories to CSV (t, x_1, ..., x_N, osc) and JSON.

Rational values are written as "p/q" strings, so an exported exact trajectory reads back exactly.
"""

import csv
import json

from src.app_data import AppData
from src.models.errors import ConsensusLabError
from src.models.errors import TraceFileError
from src.models.matrix_core import MatrixCore
from src.models.scalar import Scalar
from src.models.trajectory import Trajectory


class TrajectoryExport:

    FORMAT_CSV = "csv"
    FORMAT_JSON = "json"
    FORMATS = [FORMAT_CSV, FORMAT_JSON]

    KEY_DELTA = "delta"
    KEY_HEADER = "header"
    KEY_MODE = "mode"
    KEY_OSC = "osc"
    KEY_SCHEMA = "schema"
    KEY_T = "t"
    KEY_T_START = "t_start"
    KEY_VALUES = "values"

    def __init__(self):
        raise RuntimeError("No instance of this class is permitted")

    ###########
    # Private #
    ###########

    @staticmethod
    def _get_rows(trajectory):
        rows = []
        for t in trajectory.get_times():
            values = trajectory.get_agent_values(t)
            rows.append([str(t)] + list(map(Scalar.to_text, values)) +
                        [Scalar.to_text(MatrixCore.osc(values))])
        return rows

    ##########
    # Public #
    ##########

    @staticmethod
    def get_column_names(n):
        return ["t"] + [f"x_{i}" for i in range(1, n + 1)] + ["osc"]

    @classmethod
    def write_csv(cls, trajectory, fp, header=None):
        if header is not None:
            fp.write(f"{header}\n")
        writer = csv.writer(fp, lineterminator="\n")
        writer.writerow(cls.get_column_names(trajectory.get_n()))
        writer.writerows(cls._get_rows(trajectory))

    @classmethod
    def read_csv(cls, fp, mode=Scalar.MODE_RATIONAL):
        lines = list(filter(lambda x: not x.startswith("#") and x.strip() != "", fp))
        reader = csv.reader(lines)
        try:
            columns = next(reader)
        except StopIteration as e:
            raise TraceFileError("Trajectory CSV has no header row") from e
        if len(columns) < 3 or columns[0] != "t" or columns[-1] != "osc":
            raise TraceFileError(f"Invalid trajectory CSV header: {','.join(columns)}")
        times = []
        values = []
        for row in reader:
            if len(row) != len(columns):
                raise TraceFileError(f"Trajectory CSV row has {len(row)} fields, "
                                     f"expected {len(columns)}")
            try:
                times.append(int(row[0]))
            except ValueError as e:
                raise TraceFileError(f"Invalid time in trajectory CSV: '{row[0]}'") from e
            values.append(row[1:-1])
        if len(times) == 0:
            raise TraceFileError("Trajectory CSV has no data rows")
        try:
            return Trajectory.from_values(values, mode=mode, t_start=times[0])
        except ConsensusLabError as e:
            raise TraceFileError(f"Invalid value in trajectory CSV: {e}") from e

    @classmethod
    def to_dict(cls, trajectory, header=None):
        return {
            cls.KEY_SCHEMA: AppData.SCHEMA,
            cls.KEY_HEADER: header,
            cls.KEY_MODE: trajectory.get_mode(),
            cls.KEY_DELTA: trajectory.get_delta_max(),
            cls.KEY_T_START: trajectory.get_t_start(),
            cls.KEY_VALUES: [list(map(Scalar.to_json, trajectory.get_agent_values(t)))
                             for t in trajectory.get_times()],
            cls.KEY_OSC: [Scalar.to_json(MatrixCore.osc(trajectory.get_agent_values(t)))
                          for t in trajectory.get_times()]
        }

    @classmethod
    def save(cls, trajectory, filename, output_format=FORMAT_CSV, header=None):
        if output_format not in cls.FORMATS:
            raise TraceFileError(f"Invalid trajectory format '{output_format}', expected one of "
                                 f"{cls.FORMATS}")
        with open(filename, "w", encoding="utf-8", newline="") as fp:
            if output_format == cls.FORMAT_CSV:
                cls.write_csv(trajectory, fp, header)
            else:
                json.dump(cls.to_dict(trajectory, header), fp, indent=2)

    @classmethod
    def load(cls, filename):
        try:
            with open(filename, "r", encoding="utf-8") as fp:
                if filename.lower().endswith(".json"):
                    data = json.load(fp)
                    return Trajectory.from_values(data[cls.KEY_VALUES], data[cls.KEY_DELTA],
                                                  data[cls.KEY_MODE], data[cls.KEY_T_START])
                return cls.read_csv(fp)
        except (OSError, json.decoder.JSONDecodeError) as e:
            raise TraceFileError(f"Error reading file: {filename}:\n{e}") from e
        except KeyError as e:
            raise TraceFileError(f"Error reading file: {filename}:\nmissing field {e}") from e


if __name__ == "__main__":

    from tests.unit_tests.test_models.test_trajectory_export import TestTrajectoryExport

    TestTrajectoryExport().run(True)

"""
Test the trajectory export to CSV and JSON.
"""

import io
import json

from fractions import Fraction

from src.models.errors import TraceFileError
from src.models.scalar import Scalar
from src.models.simulator import Simulator
from src.models.trajectory import Trajectory
from src.models.trajectory_export import TrajectoryExport
from tests.test_environment.test_traces import CHAIN_3
from tests.test_environment.test_traces import constant_trace
from tests.unit_tests.lib.test_suite import TestSuite


class TestTrajectoryExport(TestSuite):

    _trajectory = None

    def setup(self):
        self._trajectory = Simulator.run_delayed(constant_trace(CHAIN_3, 3), [0, 1, "1/2"])

    def test_column_names(self):
        self.fail_if(TrajectoryExport.get_column_names(2) != ["t", "x_1", "x_2", "osc"],
                     "Column names incorrect")

    def test_write_csv(self):
        fp = io.StringIO()
        TrajectoryExport.write_csv(self._trajectory, fp, "# header line")
        lines = fp.getvalue().splitlines()
        self.fail_if(lines[0] != "# header line", "Header line missing")
        self.fail_if(lines[1] != "t,x_1,x_2,x_3,osc", f"Column line is '{lines[1]}'")
        self.fail_if(lines[2] != "0,0,1,1/2,1", f"First row is '{lines[2]}'")
        self.fail_if(lines[3] != "1,0,1/2,3/4,3/4", f"Second row is '{lines[3]}'")
        self.fail_if(len(lines) != 6, "Number of lines incorrect")

    def test_read_csv(self):
        fp = io.StringIO()
        TrajectoryExport.write_csv(self._trajectory, fp, "# header line")
        fp.seek(0)
        trajectory = TrajectoryExport.read_csv(fp)
        self.fail_if(trajectory.get_states().tolist() != self._trajectory.get_states().tolist(),
                     "CSV read back differs")
        fp.seek(0)
        self.fail_if(TrajectoryExport.read_csv(fp, Scalar.MODE_FLOAT).get_state(1)[2] != 0.75,
                     "CSV read as float incorrect")

    def test_read_csv_errors(self):
        contents = ["", "a,b,c\n", "t,x_1,osc\n", "t,x_1,osc\n0,1\n", "t,x_1,osc\nzero,1,0\n",
                    "t,x_1,osc\n0,one,0\n"]
        for content in contents:
            try:
                TrajectoryExport.read_csv(io.StringIO(content))
                self.fail(f"Invalid CSV '{content}' was accepted")
            except TraceFileError as e:
                self.log.debug(f"Error message: {e}")

    def test_augmented_export(self):
        trace = constant_trace(CHAIN_3, 4, 2)
        augmented = Simulator.run_augmented(trace, [0, 1, "1/2"])
        d = TrajectoryExport.to_dict(augmented)
        self.fail_if(d["t_start"] != 1, "Augmented start time incorrect")
        self.fail_if(len(d["values"][0]) != 3, "Augmented export has more than n values")
        delayed = Simulator.run_delayed(trace, [0, 1, "1/2"])
        self.fail_if(d["values"][-1] != list(map(Scalar.to_json, delayed.get_state(4))),
                     "Augmented export differs from the delayed run")

    def test_save_load(self):
        for output_format in TrajectoryExport.FORMATS:
            filename = self.get_output_filename(f"test_trajectory.{output_format}")
            TrajectoryExport.save(self._trajectory, filename, output_format, "# header")
            loaded = TrajectoryExport.load(filename)
            self.fail_if(loaded.get_states().tolist() != self._trajectory.get_states().tolist(),
                         f"Trajectory read back from {output_format} differs")
        with open(self.get_output_filename("test_trajectory.json"), "r", encoding="utf-8") as fp:
            data = json.load(fp)
        self.fail_if(data["header"] != "# header" or data["osc"][1] != "3/4",
                     "JSON fields incorrect")

    def test_float_values(self):
        trajectory = Trajectory.from_values([[0.5, 0.25]])
        fp = io.StringIO()
        TrajectoryExport.write_csv(trajectory, fp)
        self.fail_if(fp.getvalue().splitlines()[1] != "0,0.5,0.25,0.25",
                     "Float row incorrect")
        fp.seek(0)
        self.fail_if(TrajectoryExport.read_csv(fp).get_state(0)[1] != Fraction(1, 4),
                     "Float text read as rational incorrect")

    def test_save_errors(self):
        try:
            TrajectoryExport.save(self._trajectory, self.get_output_filename("x.txt"), "txt")
            self.fail("Invalid format was accepted")
        except TraceFileError as e:
            self.log.debug(f"Error message: {e}")
        try:
            TrajectoryExport.load(self.get_output_filename("does_not_exist.csv"))
            self.fail("Missing file was loaded")
        except TraceFileError as e:
            self.log.debug(f"Error message: {e}")


if __name__ == "__main__":

    TestTrajectoryExport().run(True)

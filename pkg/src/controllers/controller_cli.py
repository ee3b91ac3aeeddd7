"""
Command line controller: generate, simulate, check, bounds and repro.

Exit codes:
    0: converged, verified or done
    2: domain negative (no convergence, failing condition, bound not verified)
    1: usage or data error
"""

import argparse
import json
import os
import sys

from src.app_data import AppData
from src.models.contraction_bounds import ContractionBounds
from src.models.errors import ConsensusLabError
from src.models.errors import UsageError
from src.models.monitors import Monitors
from src.models.scalar import Scalar
from src.models.scenarios import Scenarios
from src.models.scenarios.counterexamples import SHIFTING_X0
from src.models.scenarios.delays import Delays
from src.models.scenarios.generator_spec import GeneratorSpec
from src.models.simulator import Simulator
from src.models.sweep_runner import SweepRunner
from src.models.trace_file import TraceFile
from src.models.trajectory_export import TrajectoryExport
from src.views.view_report import ViewReport


class _ArgumentParser(argparse.ArgumentParser):

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


class ControllerCli:

    EXIT_OK = 0
    EXIT_ERROR = 1
    EXIT_NEGATIVE = 2

    VERB_GENERATE = "generate"
    VERB_SIMULATE = "simulate"
    VERB_CHECK = "check"
    VERB_BOUNDS = "bounds"
    VERB_REPRO = "repro"

    DEFAULT_CONDITIONS = "C,D1,D2"
    REPRO_CONDITIONS = [Monitors.CONDITION_ASSUMPTIONS, Monitors.CONDITION_C,
                        Monitors.CONDITION_D1, Monitors.CONDITION_D2, Monitors.CONDITION_DSTAR]
    REPRO_X0 = {
        Scenarios.REPRO_PERMUTATION: (0, 1, 0),
        Scenarios.REPRO_SHIFTING: SHIFTING_X0
    }

    def __init__(self, logger, settings, stdout=None, stderr=None):
        self._logger = logger
        self._settings = settings
        self._stdout = sys.stdout if stdout is None else stdout
        self._stderr = sys.stderr if stderr is None else stderr

    ###########
    # Private #
    ###########

    def _write(self, text):
        self._stdout.write(f"{text}\n")

    def _write_error(self, text):
        self._stderr.write(f"{text}\n")

    @staticmethod
    def _add_generator_arguments(parser):
        parser.add_argument("--family", choices=Scenarios.get_generator_names(),
                            help="scenario generator family")
        parser.add_argument("--n", type=int, help="number of agents")
        parser.add_argument("--delta", type=int, default=1, help="delay bound")
        parser.add_argument("--alpha", default=GeneratorSpec.DEFAULT_ALPHA,
                            help="lower bound on the positive entries, e.g. 1/5 or 0.25")
        parser.add_argument("--seed", type=int, default=0, help="random seed")
        parser.add_argument("--horizon", type=int, help="number of steps")
        parser.add_argument("--delays", choices=Delays.MODES, help="delay table mode")
        parser.add_argument("--option", action="append", default=[], metavar="KEY=VALUE",
                            help="generator option, may be repeated")

    @classmethod
    def _add_source_arguments(cls, parser):
        parser.add_argument("--scenario", help="scenario trace JSON file")
        parser.add_argument("--repro", choices=Scenarios.REPROS, help="built-in counterexample")
        parser.add_argument("--phases", type=int, help="number of phases of the shifting trace")
        cls._add_generator_arguments(parser)

    def _create_parser(self):
        common = _ArgumentParser(add_help=False)
        common.add_argument("--verbose", action="store_true", help="echo the log to stderr")

        parser = _ArgumentParser(prog=AppData.EXE_NAME,
                                 description=f"{AppData.APP_NAME} V{AppData.VERSION}")
        verbs = parser.add_subparsers(dest="verb", required=True)

        generate = verbs.add_parser(self.VERB_GENERATE, parents=[common],
                                    help="generate a scenario trace")
        self._add_generator_arguments(generate)
        generate.add_argument("--mode", choices=Scalar.MODES, default=Scalar.MODE_RATIONAL)
        generate.add_argument("--out", help="output file, default is stdout")
        generate.add_argument("--seeds", help="seed sweep a..b, one file per seed")
        generate.add_argument("--out-dir", default=".", help="output folder for a seed sweep")
        generate.set_defaults(handler=self._generate)

        simulate = verbs.add_parser(self.VERB_SIMULATE, parents=[common],
                                    help="run the agreement algorithm")
        self._add_source_arguments(simulate)
        simulate.add_argument("--x0", help="initial values, comma separated")
        simulate.add_argument("--tol", type=float, help="consensus tolerance")
        simulate.add_argument("--mode", choices=Scalar.MODES, default=Scalar.MODE_FLOAT)
        simulate.add_argument("--augmented", action="store_true",
                              help="run the zero-delay augmented system")
        simulate.add_argument("--format", choices=TrajectoryExport.FORMATS,
                              default=TrajectoryExport.FORMAT_CSV)
        simulate.add_argument("--out", help="trajectory file, default is stdout")
        simulate.add_argument("--seeds", help="seed sweep a..b, one file per seed")
        simulate.add_argument("--out-dir", default=".", help="output folder for a seed sweep")
        simulate.set_defaults(handler=self._simulate)

        check = verbs.add_parser(self.VERB_CHECK, parents=[common], help="check conditions")
        self._add_source_arguments(check)
        check.add_argument("--conditions", default=self.DEFAULT_CONDITIONS,
                           help=f"comma separated, from {','.join(Monitors.CONDITIONS)}")
        check.add_argument("--phi", type=int, help="window length")
        check.add_argument("--phi-max", type=int, help="largest window length to search")
        check.add_argument("--t0", type=int, default=0, help="first step")
        check.add_argument("--format", choices=ViewReport.FORMATS, default=ViewReport.FORMAT_TABLE)
        check.set_defaults(handler=self._check)

        bounds = verbs.add_parser(self.VERB_BOUNDS, parents=[common],
                                  help="verify a contraction bound on exact products")
        self._add_source_arguments(bounds)
        bounds.add_argument("--mode", choices=ContractionBounds.MODES,
                            default=ContractionBounds.MODE_COORDINATED)
        bounds.add_argument("--t0", type=int, help="first step, default delta - 1")
        bounds.add_argument("--phi", type=int, help="window length for the granular bound")
        bounds.add_argument("--j0", type=int, help="fixed agent for the partial bound")
        bounds.add_argument("--format", choices=ViewReport.FORMATS,
                            default=ViewReport.FORMAT_TABLE)
        bounds.set_defaults(handler=self._bounds)

        repro = verbs.add_parser(self.VERB_REPRO, parents=[common],
                                 help="reproduce a counterexample")
        repro.add_argument("name", choices=Scenarios.REPROS)
        repro.add_argument("--horizon", type=int, help="horizon of the permutation trace")
        repro.add_argument("--phases", type=int, help="number of phases of the shifting trace")
        repro.add_argument("--x0", help="initial values, comma separated")
        repro.add_argument("--tol", type=float, help="consensus tolerance")
        repro.add_argument("--out", help="write the trace to this JSON file")
        repro.add_argument("--check-golden", action="store_true",
                           help="compare the trace with the stored golden file")
        repro.add_argument("--format", choices=ViewReport.FORMATS, default=ViewReport.FORMAT_TABLE)
        repro.set_defaults(handler=self._repro)
        return parser

    @staticmethod
    def _parse_options(values):
        options = {}
        for value in values:
            if "=" not in value:
                raise UsageError(f"Invalid option '{value}', expected KEY=VALUE")
            key, text = value.split("=", 1)
            try:
                options[key.strip()] = json.loads(text)
            except json.decoder.JSONDecodeError:
                options[key.strip()] = text
        return options

    def _create_spec(self, args, seed=None, mode=Scalar.MODE_RATIONAL):
        if args.family is None:
            raise UsageError("--family is required")
        if args.n is None:
            raise UsageError("--n is required with --family")
        options = self._parse_options(args.option)
        if args.delays is not None:
            options["delays"] = args.delays
        horizon = self._settings.get_horizon() if args.horizon is None else args.horizon
        return GeneratorSpec(args.family, args.n, args.delta, args.alpha, horizon,
                             args.seed if seed is None else seed, options, mode)

    def _load_trace(self, args, seed=None):
        sources = list(filter(lambda x: x is not None, [args.scenario, args.repro, args.family]))
        if len(sources) != 1:
            raise UsageError("Give exactly one of --scenario, --repro or --family")
        if args.scenario is not None:
            trace = TraceFile.load(args.scenario)
            self._logger.info(f"Loaded scenario file: {args.scenario}")
        elif args.repro is not None:
            trace = Scenarios.get_repro(args.repro, args.horizon, args.phases)
        else:
            trace = Scenarios.generate(self._create_spec(args, seed), self._logger)
        self._logger.info(trace.get_header())
        return trace

    def _parse_x0(self, text, trace, repro=None):
        if text is None:
            if repro is None:
                raise UsageError("--x0 is required")
            return list(self.REPRO_X0[repro])
        try:
            return [Scalar.convert(value, trace.get_mode()) for value in text.split(",")]
        except ConsensusLabError as e:
            raise UsageError(f"Invalid --x0: {e}") from e

    def _get_tolerance(self, tol):
        return self._settings.get_tolerance() if tol is None else tol

    def _parse_seeds(self, text):
        try:
            return SweepRunner.parse_seeds(text)
        except ValueError as e:
            raise UsageError(f"Invalid --seeds '{text}': {e}") from e

    def _run_sweep(self, job, seeds):
        runner = SweepRunner(job, seeds, workers=self._settings.get_workers(),
                             logger=self._logger)
        results = runner.run()
        errors = runner.get_errors()
        self._write(ViewReport.sweep(results, errors))
        return results, errors

    ##################
    # Verb: generate #
    ##################

    def _generate_seed(self, args, seed, filename):
        trace = Scenarios.generate(self._create_spec(args, seed, args.mode), self._logger)
        TraceFile.save(trace, filename)
        self._logger.info(f"{trace.get_header()} -> {filename}")
        return filename

    def _generate(self, args):
        if args.seeds is not None:
            if args.family is None:
                raise UsageError("--family is required")
            seeds = self._parse_seeds(args.seeds)
            if not os.path.isdir(args.out_dir):
                os.makedirs(args.out_dir)
            _, errors = self._run_sweep(
                lambda x: self._generate_seed(
                    args, x, os.path.join(args.out_dir, f"{args.family}_seed{x}.json")), seeds)
            return self.EXIT_ERROR if len(errors) > 0 else self.EXIT_OK
        trace = Scenarios.generate(self._create_spec(args, None, args.mode), self._logger)
        self._logger.info(trace.get_header())
        if args.out is None:
            self._write_error(trace.get_header())
            self._write(ViewReport.to_json_text(trace.to_dict()))
        else:
            TraceFile.save(trace, args.out)
            self._write(trace.get_header())
            self._write(f"Trace written to: {args.out}")
        return self.EXIT_OK

    ##################
    # Verb: simulate #
    ##################

    def _simulate_trace(self, trace, args, out):
        if args.mode == Scalar.MODE_FLOAT:
            trace = trace.to_float()
        x0 = self._parse_x0(args.x0, trace, args.repro)
        if args.augmented:
            trajectory = Simulator.run_augmented(trace, x0)
        else:
            trajectory = Simulator.run_delayed(trace, x0)
        verdict = Simulator.consensus_verdict(trajectory, self._get_tolerance(args.tol))
        self._logger.info(verdict[Simulator.KEY_VERDICT])
        header = trace.get_header()
        if out is None:
            if args.format == TrajectoryExport.FORMAT_CSV:
                TrajectoryExport.write_csv(trajectory, self._stdout, header)
            else:
                self._write(ViewReport.to_json_text(TrajectoryExport.to_dict(trajectory, header)))
            self._write_error(verdict[Simulator.KEY_VERDICT])
        else:
            TrajectoryExport.save(trajectory, out, args.format, header)
            self._write(header)
            self._write(ViewReport.verdict(verdict))
            self._write(f"Trajectory written to: {out}")
        return verdict

    def _simulate(self, args):
        if args.seeds is not None:
            if args.family is None:
                raise UsageError("--seeds needs --family")
            seeds = self._parse_seeds(args.seeds)
            if not os.path.isdir(args.out_dir):
                os.makedirs(args.out_dir)
            results, errors = self._run_sweep(
                lambda x: self._simulate_seed(args, x), seeds)
            if len(errors) > 0:
                return self.EXIT_ERROR
            if all(map(lambda x: x.startswith("converged"), results.values())):
                return self.EXIT_OK
            return self.EXIT_NEGATIVE
        verdict = self._simulate_trace(self._load_trace(args), args, args.out)
        return self.EXIT_OK if verdict[Simulator.KEY_CONVERGED] else self.EXIT_NEGATIVE

    def _simulate_seed(self, args, seed):
        trace = Scenarios.generate(self._create_spec(args, seed), self._logger)
        if args.mode == Scalar.MODE_FLOAT:
            trace = trace.to_float()
        x0 = self._parse_x0(args.x0, trace)
        if args.augmented:
            trajectory = Simulator.run_augmented(trace, x0)
        else:
            trajectory = Simulator.run_delayed(trace, x0)
        verdict = Simulator.consensus_verdict(trajectory, self._get_tolerance(args.tol))
        filename = os.path.join(args.out_dir, f"{args.family}_seed{seed}.{args.format}")
        TrajectoryExport.save(trajectory, filename, args.format, trace.get_header())
        self._logger.info(f"{trace.get_header()}: {verdict[Simulator.KEY_VERDICT]}")
        return verdict[Simulator.KEY_VERDICT]

    ###############
    # Verb: check #
    ###############

    def _check(self, args):
        conditions = list(filter(lambda x: x != "", map(str.strip, args.conditions.split(","))))
        unknown = list(filter(lambda x: x not in Monitors.CONDITIONS, conditions))
        if len(conditions) == 0 or len(unknown) > 0:
            raise UsageError(f"Unknown condition(s) {unknown}, expected from "
                             f"{','.join(Monitors.CONDITIONS)}")
        if args.phi is not None and args.phi < 1:
            raise UsageError(f"--phi must be at least 1, got {args.phi}")
        if Monitors.CONDITION_BIC in conditions and args.phi is None:
            raise UsageError("Condition 'bic' needs --phi")
        phi_max = self._settings.get_phi_max() if args.phi_max is None else args.phi_max
        trace = self._load_trace(args)
        reports = [Monitors.check(trace, condition, args.t0, args.phi, phi_max)
                   for condition in conditions]
        for report in reports:
            self._logger.info(report.get_summary())
        if args.format == ViewReport.FORMAT_JSON:
            self._write(ViewReport.to_json_text({
                "header": trace.get_header(),
                "reports": list(map(lambda x: x.to_dict(), reports))
            }))
        else:
            self._write(trace.get_header())
            self._write(ViewReport.conditions(reports))
        if any(map(lambda x: x.fails(), reports)):
            return self.EXIT_NEGATIVE
        return self.EXIT_OK

    ################
    # Verb: bounds #
    ################

    def _bounds(self, args):
        trace = self._load_trace(args)
        t0 = trace.get_delta_max() - 1 if args.t0 is None else args.t0
        report = ContractionBounds.verify(args.mode, trace, t0, args.phi, args.j0,
                                          self._settings.get_debug_assertions())
        self._logger.info(f"{report.get_mode()} bound: {report.get_message()}")
        if args.format == ViewReport.FORMAT_JSON:
            data = report.to_dict()
            data["header"] = trace.get_header()
            self._write(ViewReport.to_json_text(data))
        else:
            self._write(trace.get_header())
            self._write(ViewReport.bound(report))
        return self.EXIT_OK if report.is_verified() else self.EXIT_NEGATIVE

    ###############
    # Verb: repro #
    ###############

    def _repro(self, args):
        trace = Scenarios.get_repro(args.name, args.horizon, args.phases)
        self._logger.info(trace.get_header())
        reports = [Monitors.check(trace, condition) for condition in self.REPRO_CONDITIONS]
        x0 = self._parse_x0(args.x0, trace, args.name)
        verdict = Simulator.consensus_verdict(Simulator.run_delayed(trace, x0),
                                              self._get_tolerance(args.tol))
        self._logger.info(verdict[Simulator.KEY_VERDICT])
        if args.out is not None:
            TraceFile.save(trace, args.out)
        if args.format == ViewReport.FORMAT_JSON:
            self._write(ViewReport.to_json_text({
                "header": trace.get_header(),
                "reports": list(map(lambda x: x.to_dict(), reports)),
                "verdict": verdict
            }))
        else:
            self._write(trace.get_header())
            self._write(ViewReport.conditions(reports))
            self._write(ViewReport.verdict(verdict))
        if args.out is not None:
            self._write(f"Trace written to: {args.out}")
        if args.check_golden:
            golden = TraceFile.read_json(Scenarios.get_golden_filename(args.name))
            if golden != trace.to_dict():
                self._write(f"Trace differs from the golden file "
                            f"{Scenarios.get_golden_filename(args.name)}")
                return self.EXIT_NEGATIVE
            self._write("Trace matches the golden file")
        return self.EXIT_OK

    ##########
    # Public #
    ##########

    def run(self, argv):
        try:
            args = self._create_parser().parse_args(argv)
            self._logger.info(f"Run '{args.verb}' with: {' '.join(argv)}")
            exit_code = args.handler(args)
        except SystemExit as e:
            # Help output
            return self.EXIT_OK if e.code in (None, 0) else self.EXIT_ERROR
        except UsageError as e:
            self._logger.error(f"Usage error: {e}")
            self._write_error(f"Usage error: {e}")
            return self.EXIT_ERROR
        except ConsensusLabError as e:
            self._logger.error(f"{e.__class__.__name__}: {e}")
            self._write_error(f"Error: {e}")
            return self.EXIT_ERROR
        self._logger.info(f"Exit code: {exit_code}")
        return exit_code


if __name__ == "__main__":

    from tests.unit_tests.test_controllers.test_controller_cli import TestControllerCli

    TestControllerCli().run(True)

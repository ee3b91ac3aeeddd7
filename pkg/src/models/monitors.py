"""
Condition checks over finite traces.

Conditions that quantify over infinite suffixes (D1 and part (1) of D*) are never claimed to hold
on a finite trace: they are "witnessed" up to the last suffix start that still satisfies them.
Periodic traces are decided exactly from the edges of one period.
"""

from src.models.condition_report import ConditionReport
from src.models.delay_schedule import DelaySchedule
from src.models.digraph import Digraph
from src.models.errors import ConsensusLabError
from src.models.errors import TraceError
from src.models.graph_analysis import GraphAnalysis
from src.models.matrix_core import MatrixCore
from src.models.scalar import Scalar


class Monitors:

    CONDITION_ASSUMPTIONS = "assumptions"
    CONDITION_BIC = "bic"
    CONDITION_C = "C"
    CONDITION_D1 = "D1"
    CONDITION_D2 = "D2"
    CONDITION_DIAMOND_C = "diamondC"
    CONDITION_DIAMOND_D2 = "diamondD2"
    CONDITION_DSTAR = "Dstar"
    CONDITION_POSITIVE = "positive"
    CONDITIONS = [CONDITION_C, CONDITION_D1, CONDITION_D2, CONDITION_DSTAR, CONDITION_DIAMOND_C,
                  CONDITION_DIAMOND_D2, CONDITION_BIC, CONDITION_ASSUMPTIONS, CONDITION_POSITIVE]

    KIND_C = "C"
    KIND_D2 = "D2"

    KEY_A1 = "A1"
    KEY_A2 = "A2"
    KEY_A3 = "A3"
    KEY_B = "B"
    KEY_COORDINATORS = "coordinators"
    KEY_EDGES = "edges"
    KEY_FAILURES = "failures"
    KEY_FROM_T = "from_t"
    KEY_HORIZON = "horizon"
    KEY_J = "j"
    KEY_KIND = "kind"
    KEY_LENGTH = "length"
    KEY_PERIOD = "period"
    KEY_PER_STEP_WITNESSES = "per_step_witnesses"
    KEY_PHI = "phi"
    KEY_PHI_MAX = "phi_max"
    KEY_T0 = "t0"
    KEY_WEAK_VARIANT_HOLDS = "weak_variant_holds"
    KEY_WITNESSED_UNTIL = "witnessed_until"

    DEFAULT_PHI_MAX = 8

    def __init__(self):
        raise RuntimeError("No instance of this class is permitted")

    ###########
    # Private #
    ###########

    @staticmethod
    def _check_from_t(trace, from_t):
        if not 0 <= from_t < trace.get_horizon():
            raise TraceError(f"Start time {from_t} is outside the trace "
                             f"0..{trace.get_horizon() - 1}")

    @staticmethod
    def _suffix_unions(trace, from_t):
        # Index k holds the union of E(s) for s in [from_t + k, horizon)
        unions = []
        edges = set()
        for t in range(trace.get_horizon() - 1, from_t - 1, -1):
            edges.update(trace.get_graph(t).get_edge_set())
            unions.append(Digraph(trace.get_n(), edges))
        unions.reverse()
        return unions

    @staticmethod
    def _is_periodic(trace, from_t):
        period = trace.get_period()
        return period is not None and from_t + period <= trace.get_horizon()

    @staticmethod
    def _period_union(trace, from_t):
        return GraphAnalysis.union(trace.get_graphs()[from_t:from_t + trace.get_period()])

    @classmethod
    def _check_suffix_property(cls, trace, from_t, predicate, description):
        """
        Returns (verdict, witnessed_until, violation) for "every suffix union from from_t on has
        the property".
        """
        if cls._is_periodic(trace, from_t):
            if predicate(cls._period_union(trace, from_t)):
                return ConditionReport.VERDICT_HOLDS, None, None
            return ConditionReport.VERDICT_FAILS, None, (
                from_t, f"the edges of one period are not {description}")
        unions = cls._suffix_unions(trace, from_t)
        if not predicate(unions[0]):
            return ConditionReport.VERDICT_FAILS, None, (
                from_t, f"the union of the graphs from t = {from_t} on is not {description}")
        witnessed_until = from_t
        for k, union in enumerate(unions):
            if not predicate(union):
                break
            witnessed_until = from_t + k
        return ConditionReport.VERDICT_WITNESSED, witnessed_until, None

    @staticmethod
    def _graph_property(kind):
        if kind == Monitors.KIND_C:
            return lambda x: GraphAnalysis.is_oriented(x) is not None
        if kind == Monitors.KIND_D2:
            return GraphAnalysis.is_completely_reducible
        raise ConsensusLabError(f"Unknown kind '{kind}', expected C or D2")

    @staticmethod
    def _reducibility_reason(g):
        for component in GraphAnalysis.weak_components(g):
            if not GraphAnalysis.is_strongly_connected(GraphAnalysis.induced(g, component)):
                return f"component {sorted(component)} is not strongly connected"
        return "graph is completely reducible"

    @classmethod
    def _assumption_failures(cls, trace):
        """Returns the first failure per assumption as {key: (t, reason)}."""
        failures = {}
        alpha = trace.get_alpha()
        for t, matrix in enumerate(trace.get_matrices()):
            if cls.KEY_A1 not in failures and \
                    not all(map(lambda x: Scalar.is_close(sum(x), 1), matrix.get_entries())):
                failures[cls.KEY_A1] = (t, f"A({t}) has a row that does not sum to 1 (A1)")
            if cls.KEY_A2 not in failures and not matrix.has_self_loops():
                failures[cls.KEY_A2] = (t, f"A({t}) has a zero diagonal entry (A2)")
            threshold = alpha if matrix.is_rational() else float(alpha) - Scalar.FLOAT_TOLERANCE
            if cls.KEY_A3 not in failures and matrix.get_min_positive() < threshold:
                failures[cls.KEY_A3] = (t, f"A({t}) has a positive entry below alpha "
                                           f"{Scalar.to_text(alpha)} (A3)")
        violations = trace.get_delays().validate()
        if len(violations) > 0:
            v = min(violations, key=lambda x: x[DelaySchedule.KEY_T])
            failures[cls.KEY_B] = (v[DelaySchedule.KEY_T],
                                   f"delay of agent {v[DelaySchedule.KEY_J]} used by agent "
                                   f"{v[DelaySchedule.KEY_I]} violates {v[DelaySchedule.KEY_RULE]}")
        return failures

    @staticmethod
    def _check_window(trace, t0, phi):
        if phi is None or phi < 1:
            raise TraceError(f"Phi must be a positive integer, got {phi}")
        if t0 < 0 or t0 + phi > trace.get_horizon():
            raise TraceError(f"Window T0 = {t0}, phi = {phi} does not fit in horizon "
                             f"{trace.get_horizon()}")

    ##########
    # Public #
    ##########

    @classmethod
    def check_c(cls, trace):
        coordinators = []
        violation = None
        for t, graph in enumerate(trace.get_graphs()):
            j = GraphAnalysis.is_oriented(graph)
            coordinators.append(j)
            if j is None and violation is None:
                violation = (t, f"G({t}) is not oriented")
        verdict = ConditionReport.VERDICT_FAILS if violation else ConditionReport.VERDICT_HOLDS
        return ConditionReport(cls.CONDITION_C, verdict, violation,
                               {cls.KEY_HORIZON: trace.get_horizon()},
                               {cls.KEY_COORDINATORS: coordinators})

    @classmethod
    def check_d2(cls, trace):
        failures = []
        violation = None
        for t, graph in enumerate(trace.get_graphs()):
            if not GraphAnalysis.is_completely_reducible(graph):
                failures.append(t)
                if violation is None:
                    violation = (t, f"G({t}): {cls._reducibility_reason(graph)}")
        verdict = ConditionReport.VERDICT_FAILS if violation else ConditionReport.VERDICT_HOLDS
        return ConditionReport(cls.CONDITION_D2, verdict, violation,
                               {cls.KEY_HORIZON: trace.get_horizon()},
                               {cls.KEY_FAILURES: failures})

    @classmethod
    def check_d1(cls, trace, from_t=0):
        cls._check_from_t(trace, from_t)
        verdict, witnessed_until, violation = cls._check_suffix_property(
            trace, from_t, GraphAnalysis.is_strongly_connected, "strongly connected")
        report = ConditionReport(cls.CONDITION_D1, verdict, violation,
                                 {cls.KEY_FROM_T: from_t, cls.KEY_HORIZON: trace.get_horizon(),
                                  cls.KEY_PERIOD: trace.get_period()},
                                 {cls.KEY_WITNESSED_UNTIL: witnessed_until})
        if verdict == ConditionReport.VERDICT_WITNESSED:
            report.add_note(f"witnessed on a finite trace of horizon {trace.get_horizon()}, "
                            f"suffix unions strongly connected up to t = {witnessed_until}")
        return report

    @classmethod
    def check_diamond(cls, trace, kind, t0, phi):
        cls._check_window(trace, t0, phi)
        predicate = cls._graph_property(kind)
        condition = cls.CONDITION_DIAMOND_C if kind == cls.KIND_C else cls.CONDITION_DIAMOND_D2
        matrices = trace.get_matrices()
        coordinators = []
        violation = None
        for t in range(t0, trace.get_horizon() - phi + 1):
            graph = GraphAnalysis.product_graph(matrices[t:t + phi])
            if kind == cls.KIND_C:
                coordinators.append(GraphAnalysis.is_oriented(graph))
            if not predicate(graph):
                if kind == cls.KIND_C:
                    reason = f"H({t}) is not oriented"
                else:
                    reason = f"H({t}): {cls._reducibility_reason(graph)}"
                violation = (t, reason)
                break
        verdict = ConditionReport.VERDICT_FAILS if violation else ConditionReport.VERDICT_HOLDS
        details = {cls.KEY_COORDINATORS: coordinators} if kind == cls.KIND_C else {}
        return ConditionReport(condition, verdict, violation,
                               {cls.KEY_KIND: kind, cls.KEY_T0: t0, cls.KEY_PHI: phi,
                                cls.KEY_HORIZON: trace.get_horizon()}, details)

    @classmethod
    def search_diamond(cls, trace, kind, t0=0, phi_max=DEFAULT_PHI_MAX):
        """Smallest phi in 1..phi_max for which the granular condition holds from t0."""
        last_report = None
        for phi in range(1, min(phi_max, trace.get_horizon() - t0) + 1):
            last_report = cls.check_diamond(trace, kind, t0, phi)
            if last_report.holds():
                last_report.add_note(f"smallest working phi is {phi}")
                return last_report
        if last_report is None:
            raise TraceError(f"No window of length >= 1 fits from T0 = {t0}")
        last_report.add_note(f"no phi <= {phi_max} works")
        return last_report

    @classmethod
    def check_dstar(cls, trace, from_t=0):
        cls._check_from_t(trace, from_t)
        n = trace.get_n()
        graphs = trace.get_graphs()[from_t:]
        per_step = []
        for graph in graphs:
            matches = list(filter(lambda x: GraphAnalysis.satisfies_pj(graph, x),
                                  graph.get_nodes()))
            per_step.append(matches[0] if len(matches) > 0 else None)
        weak_variant = all(map(lambda x: x is not None, per_step))
        failures = {}
        witness = None
        witnessed_until = None
        verdict = None
        for j in range(1, n + 1):
            failing = list(filter(lambda x: not GraphAnalysis.satisfies_pj(graphs[x], j),
                                  range(len(graphs))))
            if len(failing) > 0:
                failures[j] = (from_t + failing[0], f"G({from_t + failing[0]}) does not "
                                                    f"satisfy the per-step condition for j = {j}")
                continue
            suffix_verdict, until, violation = cls._check_suffix_property(
                trace, from_t, lambda x, j=j: GraphAnalysis.is_j_oriented(x, j), f"{j}-oriented")
            if suffix_verdict == ConditionReport.VERDICT_FAILS:
                failures[j] = violation
                continue
            witness = j
            witnessed_until = until
            verdict = suffix_verdict
            break
        notes = []
        violation = None
        if witness is None:
            verdict = ConditionReport.VERDICT_FAILS
            last = max(failures.values(), key=lambda x: x[0])
            violation = (last[0], f"no fixed agent works, last one fails: {last[1]}")
            if weak_variant:
                notes.append("per-step weak variant holds: at every step some agent j has a "
                             "j-oriented component and all other components are strongly "
                             "connected")
        elif verdict == ConditionReport.VERDICT_WITNESSED:
            notes.append(f"witnessed on a finite trace of horizon {trace.get_horizon()}")
        if trace.violates_a2():
            notes.append("trace is flagged violates-A2")
        return ConditionReport(
            cls.CONDITION_DSTAR, verdict, violation,
            {cls.KEY_FROM_T: from_t, cls.KEY_HORIZON: trace.get_horizon(),
             cls.KEY_PERIOD: trace.get_period()},
            {cls.KEY_J: witness, cls.KEY_WITNESSED_UNTIL: witnessed_until,
             cls.KEY_WEAK_VARIANT_HOLDS: weak_variant, cls.KEY_PER_STEP_WITNESSES: per_step},
            notes)

    @classmethod
    def check_bounded_intercomm(cls, trace, phi):
        cls._check_window(trace, 0, phi)
        graphs = trace.get_graphs()
        edges = set()
        for graph in graphs:
            edges.update(graph.get_edge_set())
        violation = None
        for t in range(trace.get_horizon() - phi + 1):
            present = set()
            for graph in graphs[t:t + phi]:
                present.update(graph.get_edge_set())
            missing = sorted(edges - present)
            if len(missing) > 0:
                violation = (t, f"edge {missing[0]} is absent in the window "
                                f"{t}..{t + phi - 1}")
                break
        verdict = ConditionReport.VERDICT_FAILS if violation else ConditionReport.VERDICT_HOLDS
        return ConditionReport(cls.CONDITION_BIC, verdict, violation,
                               {cls.KEY_PHI: phi, cls.KEY_HORIZON: trace.get_horizon()},
                               {cls.KEY_EDGES: list(map(list, sorted(edges)))})

    @classmethod
    def check_assumptions(cls, trace):
        """A2 may be waived by a flag at construction, the others can only break afterwards."""
        keys = [cls.KEY_A1, cls.KEY_A2, cls.KEY_A3, cls.KEY_B]
        failures = cls._assumption_failures(trace)
        details = {key: key not in failures for key in keys}
        violation = None
        if len(failures) > 0:
            violation = min(failures.values(), key=lambda x: x[0])
        verdict = ConditionReport.VERDICT_FAILS if violation else ConditionReport.VERDICT_HOLDS
        notes = []
        if list(failures) == [cls.KEY_A2]:
            notes.append("all assumptions hold except A2")
        elif len(failures) > 0:
            notes.append(f"failing: {', '.join(filter(lambda x: x in failures, keys))}")
        return ConditionReport(cls.CONDITION_ASSUMPTIONS, verdict, violation,
                               {cls.KEY_HORIZON: trace.get_horizon()}, details, notes)

    @classmethod
    def check_positive_products(cls, trace, length, t0=0):
        cls._check_window(trace, t0, length)
        matrices = trace.get_matrices()
        violation = None
        for t in range(t0, trace.get_horizon() - length + 1):
            if not MatrixCore.product_pattern(matrices[t:t + length]).all():
                violation = (t, f"the product of A({t})..A({t + length - 1}) has a zero entry")
                break
        verdict = ConditionReport.VERDICT_FAILS if violation else ConditionReport.VERDICT_HOLDS
        return ConditionReport(cls.CONDITION_POSITIVE, verdict, violation,
                               {cls.KEY_LENGTH: length, cls.KEY_T0: t0,
                                cls.KEY_HORIZON: trace.get_horizon()})

    @classmethod
    def check(cls, trace, condition, t0=0, phi=None, phi_max=DEFAULT_PHI_MAX):
        if condition == cls.CONDITION_C:
            return cls.check_c(trace)
        if condition == cls.CONDITION_D1:
            return cls.check_d1(trace, t0)
        if condition == cls.CONDITION_D2:
            return cls.check_d2(trace)
        if condition == cls.CONDITION_DSTAR:
            return cls.check_dstar(trace, t0)
        if condition in (cls.CONDITION_DIAMOND_C, cls.CONDITION_DIAMOND_D2):
            kind = cls.KIND_C if condition == cls.CONDITION_DIAMOND_C else cls.KIND_D2
            if phi is None:
                return cls.search_diamond(trace, kind, t0, phi_max)
            return cls.check_diamond(trace, kind, t0, phi)
        if condition == cls.CONDITION_BIC:
            return cls.check_bounded_intercomm(trace, phi)
        if condition == cls.CONDITION_ASSUMPTIONS:
            return cls.check_assumptions(trace)
        if condition == cls.CONDITION_POSITIVE:
            return cls.check_positive_products(trace, phi if phi is not None else trace.get_n(),
                                               t0)
        raise ConsensusLabError(f"Unknown condition '{condition}', expected one of "
                                f"{cls.CONDITIONS}")


if __name__ == "__main__":

    from tests.unit_tests.test_models.test_monitors import TestMonitors

    TestMonitors().run(True)

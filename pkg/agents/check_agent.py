# agents/check_agent.py
"""
Check Agent
Runs the verification suites: golden tables, degree-1 localization,
integrality, divisor equation, extraction consistency and closed formulas
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple
import sys
import os

# Add parent directory to path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from config.settings import EXIT_CHECK_FAILED, EXIT_OK, SELFTEST_MAX_DEGREE
from support.errors import ConfigError, MirrorError
from support.job_config import JobConfig
from support.knowledge_base import KnowledgeBase, get_knowledge_base
from support.response_synthesizer import ResponseSynthesizer, get_synthesizer, signature_label
from tools.closed_forms import (
    am_invert,
    candelas_potential,
    concave_closed_form,
    integrality_report,
    multiple_cover,
    two_point_eta_notes,
)
from tools.euler_data import BundleSpec, InsertionSpec
from tools.localization_oracle import default_weight_vectors, localize_degree1
from tools.recovery import InvariantTable, compute_insertions, one_point, two_point

logger = logging.getLogger(__name__)

CHECK_NAMES = ("golden", "oracle", "integrality", "divisor", "consistency", "multiple-cover", "concave", "candelas")


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    notes: List[str] = field(default_factory=list)


def _first_mismatch(computed: InvariantTable, expected: InvariantTable, D: int) -> Optional[str]:
    """Counterexample row, or None when every expected row up to D matches"""
    for d, signature, value in expected.sorted_rows():
        if d > D:
            continue
        got = computed.get(d, signature)
        if got != value:
            return f"d={d} [{signature_label(signature)}]: computed {got}, expected {value}"
    return None


class CheckAgent:
    """
    Runs named check suites and collects CheckResult objects.
    Every suite catches engine errors and reports them as failures.
    """

    def __init__(self, knowledge_base: KnowledgeBase = None, synthesizer: ResponseSynthesizer = None):
        self.knowledge_base = knowledge_base or get_knowledge_base()
        self.synthesizer = synthesizer or get_synthesizer()
        self.name = "Check Agent"
        self.suites: Dict[str, Callable[[JobConfig], List[CheckResult]]] = {
            "golden": self.check_golden,
            "oracle": self.check_oracle,
            "integrality": self.check_integrality,
            "divisor": self.check_divisor,
            "consistency": self.check_consistency,
            "multiple-cover": self.check_multiple_cover,
            "concave": self.check_concave,
            "candelas": self.check_candelas,
        }

    # ============ DRIVER ============

    def _run_suite(self, name: str, cfg: JobConfig) -> List[CheckResult]:
        logger.info("[Check] running %s (D=%d)", name, cfg.max_degree)
        try:
            return self.suites[name](cfg)
        except MirrorError as exc:
            return [CheckResult(name, False, f"{exc.rule}: {exc.message}")]

    def run(self, cfg: JobConfig, checks: Sequence[str] = ()) -> List[CheckResult]:
        """
        Run the selected suites (all of them when none are selected)

        Args:
            cfg: supplies max_degree, jobs and the descendent sign convention
            checks: suite names from CHECK_NAMES

        Returns:
            Results in suite order, independent of the worker count
        """
        selected = list(checks) or list(CHECK_NAMES)
        unknown = [c for c in selected if c not in self.suites]
        if unknown:
            raise ConfigError(f"unknown check(s) {unknown}; expected some of {CHECK_NAMES}")
        if cfg.jobs > 1 and len(selected) > 1:
            with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
                batches = list(pool.map(lambda name: self._run_suite(name, cfg), selected))
        else:
            batches = [self._run_suite(name, cfg) for name in selected]
        return [result for batch in batches for result in batch]

    def run_check(self, cfg: JobConfig, checks: Sequence[str] = ()) -> Tuple[str, int]:
        """Report text and exit code (0 iff every check passed)"""
        results = self.run(cfg, checks)
        report = self.synthesizer.format_check_report(f"Checks (D={cfg.max_degree})", results)
        return report, (EXIT_OK if all(r.passed for r in results) else EXIT_CHECK_FAILED)

    def run_selftest(self, jobs: int = 1) -> Tuple[str, int]:
        """Every suite at a small truncation order"""
        cfg = JobConfig(max_degree=SELFTEST_MAX_DEGREE, jobs=jobs)
        results = self.run(cfg)
        report = self.synthesizer.format_check_report(f"Self-test (D={SELFTEST_MAX_DEGREE})", results)
        return report, (EXIT_OK if all(r.passed for r in results) else EXIT_CHECK_FAILED)

    # ============ GOLDEN TABLES ============

    def _golden_values(self, name: str, cfg: JobConfig) -> Tuple[InvariantTable, InvariantTable, int]:
        kb = self.knowledge_base
        expected = kb.get_table(name)
        D = min(cfg.max_degree, kb.max_degree(name) or 0)
        computed = InvariantTable(kb.bundle(), label=name)
        for signature in kb.get_signatures(name):
            part = compute_insertions(kb.bundle(), InsertionSpec(signature), D, jobs=cfg.jobs,
                                      convention="published")
            computed = computed.merge(part)
        return computed, expected, D

    def check_golden(self, cfg: JobConfig) -> List[CheckResult]:
        results = []
        computed_tables = {}
        for name in self.knowledge_base.available():
            computed, expected, D = self._golden_values(name, cfg)
            computed_tables[name] = (computed, D)
            mismatch = _first_mismatch(computed, expected, D)
            notes = [f"d={d}: {text}" for d, text in sorted(self.knowledge_base.get_notes(name).items()) if d <= D]
            rows = sum(1 for d, _, _ in expected.sorted_rows() if d <= D)
            results.append(CheckResult(f"golden {name}", mismatch is None,
                                       mismatch or f"{rows} rows match", notes))

        if "one_point" in computed_tables:
            computed, D = computed_tables["one_point"]
            eta = am_invert(computed, 1, D)
            published = self.knowledge_base.get_eta("one_point")
            mismatch = _first_mismatch(eta, published, D) if published is not None else None
            results.append(CheckResult("golden one-point eta", mismatch is None, mismatch or "eta column matches"))

            if "two_point" in computed_tables:
                two_point_table, two_point_d = computed_tables["two_point"]
                results.append(self._two_point_eta_discrepancy(two_point_table, eta, min(D, two_point_d)))
        return results

    def _two_point_eta_discrepancy(self, two_point_table: InvariantTable, one_point_eta: InvariantTable,
                                   D: int) -> CheckResult:
        """Informational: the printed two-point eta column is not the naive m=2 inversion"""
        published = self.knowledge_base.get_eta("two_point")
        if published is None:
            return CheckResult("two-point eta discrepancy (informational)", True, "no printed eta column")
        naive = am_invert(two_point_table, 2, D)
        signature = two_point_table.signatures()[0]
        one_point_signature = one_point_eta.signatures()[0]
        notes = two_point_eta_notes(
            naive.column(signature),
            {d: v for d, v in published.column(signature).items() if d <= D},
            one_point_eta.column(one_point_signature),
        )
        detail = "naive m=2 inversion agrees with the printed column" if not notes else \
            f"{len(notes)} degree(s) differ from the printed column"
        return CheckResult("two-point eta discrepancy (informational)", True, detail, [n.describe() for n in notes])

    # ============ ORACLE ============

    def oracle_cases(self) -> List[Tuple[BundleSpec, InsertionSpec]]:
        golden = self.knowledge_base.bundle()
        return [
            (golden, InsertionSpec.one_point(3)),
            (golden, InsertionSpec.two_point(2, 2)),
            (golden, InsertionSpec.two_point(2, 1, 1)),
            (golden, InsertionSpec.two_point(2, 0, 2)),
            (golden, InsertionSpec.one_point(2, 1)),
            (golden, InsertionSpec.one_point(1, 2)),
            (golden, InsertionSpec.one_point(0, 3)),
            (BundleSpec(4, (5,)), InsertionSpec.one_point(1)),
            (BundleSpec(1, (), (1, 1)), InsertionSpec.one_point(1)),
            (BundleSpec(1, (), (1, 1)), InsertionSpec.two_point(1, 1)),
            (BundleSpec(2, (), (1, 2)), InsertionSpec.one_point(2)),
        ]

    def check_oracle(self, cfg: JobConfig) -> List[CheckResult]:
        """Degree-1 pipeline values against localization, geometric convention throughout"""
        weights = default_weight_vectors()
        results = []
        for bundle, insertions in self.oracle_cases():
            name = f"oracle {bundle.label()} <{insertions.label()}>"
            values = [localize_degree1(bundle, insertions, w) for w in weights]
            if len(set(values)) != 1:
                results.append(CheckResult(name, False, f"weight-dependent localization: {values}"))
                continue
            table = compute_insertions(bundle, insertions, 1, convention="geometric")
            computed = table.get(1, insertions.points)
            passed = computed == values[0]
            results.append(CheckResult(name, passed, f"K_1 = {values[0]}" if passed else
                                       f"pipeline {computed}, localization {values[0]}"))
        return results

    # ============ INTEGRALITY ============

    def check_integrality(self, cfg: JobConfig) -> List[CheckResult]:
        golden = self.knowledge_base.bundle()
        D = cfg.max_degree
        results = []
        eta = am_invert(one_point(golden, 3, D, jobs=cfg.jobs), 1, D)
        report = integrality_report(eta)
        failure = report.failures()[0] if report.failures() else None
        results.append(CheckResult("integrality eta_d(H^3) on " + golden.label(), report.passed,
                                   f"d={failure.d} gives {failure.value}" if failure else f"{len(report.rows)} integral values"))

        Dq = min(D, 5)
        quintic = BundleSpec(4, (5,))
        eta = am_invert(one_point(quintic, 1, Dq, jobs=cfg.jobs), 1, Dq)
        report = integrality_report(eta, divide_by_degree=True)
        failure = report.failures()[0] if report.failures() else None
        values = ", ".join(str(row.value) for row in report.rows)
        results.append(CheckResult("integrality eta_d(H)/d on the quintic", report.passed,
                                   f"d={failure.d} gives {failure.value}" if failure else values))
        return results

    # ============ DIVISOR / CONSISTENCY ============

    def check_divisor(self, cfg: JobConfig) -> List[CheckResult]:
        """K_d(H^3, H) = d K_d(H^3)"""
        golden = self.knowledge_base.bundle()
        D = min(cfg.max_degree, 6)
        single = one_point(golden, 3, D, jobs=cfg.jobs)
        double = two_point(golden, 3, 1, 0, D, jobs=cfg.jobs)
        for d in range(1, D + 1):
            lhs = double.get(d, ((3, 0), (1, 0)))
            rhs = d * single.get(d, ((3, 0),))
            if lhs != rhs:
                return [CheckResult("divisor equation", False, f"d={d}: K(H^3,H) = {lhs}, d K(H^3) = {rhs}")]
        return [CheckResult("divisor equation", True, f"d <= {D} on {golden.label()}")]

    def check_consistency(self, cfg: JobConfig) -> List[CheckResult]:
        """s-row agreement, s > 1 vanishing and agreement of the two one-point routes"""
        results = []
        cases = [(self.knowledge_base.bundle(), 3, min(cfg.max_degree, 6)), (BundleSpec(4, (5,)), 1, min(cfg.max_degree, 4))]
        for bundle, h, D in cases:
            one_point(bundle, h, D, jobs=cfg.jobs, consistency_checks=True)
            results.append(CheckResult(f"extraction consistency {bundle.label()} <H^{h}>", True, f"d <= {D}"))
        return results

    # ============ CLOSED FORMS ============

    def check_multiple_cover(self, cfg: JobConfig) -> List[CheckResult]:
        D = min(cfg.max_degree, 6)
        results = []
        for n in range(1, 5):
            bundle = BundleSpec(n, (), (1,) * (n + 1))
            table = two_point(bundle, n, n, 0, D, jobs=cfg.jobs)
            bad = [(d, table.get(d, ((n, 0), (n, 0))), multiple_cover(n, d))
                   for d in range(1, D + 1) if table.get(d, ((n, 0), (n, 0))) != multiple_cover(n, d)]
            detail = f"d={bad[0][0]}: pipeline {bad[0][1]}, formula {bad[0][2]}" if bad else f"d <= {D}"
            results.append(CheckResult(f"multiple cover {bundle.label()}", not bad, detail))
        return results

    def check_concave(self, cfg: JobConfig) -> List[CheckResult]:
        results = []
        cases = [
            (BundleSpec(1, (), (1, 1)), 1, min(cfg.max_degree, 6), lambda b, d: Fraction(1, d * d)),
            (BundleSpec(2, (), (1, 2)), 2, min(cfg.max_degree, 4), concave_closed_form),
            (BundleSpec(4, (2,), (1, 1, 1)), 4, min(cfg.max_degree, 4), concave_closed_form),
        ]
        for bundle, h, D, formula in cases:
            table = one_point(bundle, h, D, jobs=cfg.jobs)
            bad = [(d, table.get(d, ((h, 0),)), formula(bundle, d))
                   for d in range(1, D + 1) if table.get(d, ((h, 0),)) != formula(bundle, d)]
            detail = f"d={bad[0][0]}: pipeline {bad[0][1]}, formula {bad[0][2]}" if bad else f"d <= {D}"
            results.append(CheckResult(f"concave closed form {bundle.label()}", not bad, detail))
        return results

    def check_candelas(self, cfg: JobConfig) -> List[CheckResult]:
        D = min(cfg.max_degree, 5)
        quintic = BundleSpec(4, (5,))
        potential = candelas_potential(4, D)
        pipeline = one_point(quintic, 1, D, jobs=cfg.jobs)
        oracle = localize_degree1(quintic, InsertionSpec.one_point(1), default_weight_vectors()[0])
        results = [CheckResult("Candelas K_1 = 2875", potential.instantons[1] == 2875 == oracle,
                               f"potential {potential.instantons[1]}, localization {oracle}")]
        bad = [d for d in range(1, D + 1) if potential.instantons[d] != pipeline.get(d, ((1, 0),))]
        results.append(CheckResult("Candelas potential agrees with the pipeline", not bad,
                                   f"first disagreement at d={bad[0]}" if bad else f"d <= {D}"))
        return results


def run_check(cfg: JobConfig, checks: Sequence[str] = ()) -> str:
    """Check report for cfg"""
    report, _ = CheckAgent().run_check(cfg, checks)
    return report

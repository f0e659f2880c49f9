# agents/router_agent.py
"""
Router Agent
Validates a compute request and routes it to the pipeline, the Candelas
potential or a closed formula, then renders the result
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple
import sys
import os

# Add parent directory to path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from config.settings import EXIT_CHECK_FAILED, EXIT_OK
from support.errors import Inapplicable, WrongBundleClass
from support.job_config import JobConfig
from support.response_synthesizer import ResponseSynthesizer, get_synthesizer
from tools.closed_forms import (
    IntegralityReport,
    am_invert,
    candelas_potential,
    concave_closed_form,
    integrality_report,
    multiple_cover,
)
from tools.euler_data import BundleSpec, InsertionSpec, classify
from tools.localization_oracle import default_weight_vectors, localize_degree1
from tools.recovery import InvariantTable, compute_insertions, presentation_sign, require_admissible

logger = logging.getLogger(__name__)


@dataclass
class ComputeResult:
    """Everything run_compute produces before rendering"""
    table: InvariantTable
    pipeline_class: str
    eta: Optional[InvariantTable] = None
    eta_label: str = "eta"
    integrality: Optional[IntegralityReport] = None
    oracle_values: List[Fraction] = field(default_factory=list)
    oracle_passed: Optional[bool] = None

    @property
    def passed(self) -> bool:
        if self.integrality is not None and not self.integrality.passed:
            return False
        return self.oracle_passed is not False


class RouterAgent:
    """
    Entry point for compute requests.
    Picks the computation route named by cfg.method.
    """

    def __init__(self, synthesizer: ResponseSynthesizer = None):
        self.synthesizer = synthesizer or get_synthesizer()
        self.name = "Router Agent"
        self.routes = {
            "pipeline": self._route_pipeline,
            "candelas": self._route_candelas,
            "closed-form": self._route_closed_form,
        }

    # ============ REQUEST PARSING ============

    def parse(self, cfg: JobConfig) -> Tuple[BundleSpec, InsertionSpec]:
        cfg.validate()
        bundle = BundleSpec(cfg.n, tuple(cfg.positives), tuple(cfg.negatives))
        insertions = InsertionSpec(tuple(cfg.insertions))
        require_admissible(bundle, insertions)
        return bundle, insertions

    # ============ ROUTING ============

    def route(self, cfg: JobConfig) -> ComputeResult:
        """
        Compute the requested invariants plus any requested extras

        Args:
            cfg: validated job configuration

        Returns:
            ComputeResult
        """
        bundle, insertions = self.parse(cfg)
        logger.info("[Router] Routing to: %s (%s)", cfg.method, cfg.get_context_summary())
        table = self.routes[cfg.method](cfg, bundle, insertions)
        result = ComputeResult(table, classify(bundle).value)

        if cfg.eta or cfg.integrality:
            result.eta = am_invert(table, insertions.m, cfg.max_degree)
            if insertions.m == 2:
                result.eta_label = "naive Aspinwall-Morrison inversion (m=2)"
        if cfg.integrality:
            quintic_type = not bundle.negatives and bundle.positives == (bundle.n + 1,)
            result.integrality = integrality_report(result.eta, divide_by_degree=quintic_type)
        if cfg.oracle_check:
            self._oracle_check(cfg, bundle, insertions, result)
        return result

    def _route_pipeline(self, cfg: JobConfig, bundle: BundleSpec, insertions: InsertionSpec) -> InvariantTable:
        return compute_insertions(
            bundle, insertions, cfg.max_degree, jobs=cfg.jobs,
            convention=cfg.descendent_sign, consistency_checks=cfg.consistency_checks,
        )

    def _route_candelas(self, cfg: JobConfig, bundle: BundleSpec, insertions: InsertionSpec) -> InvariantTable:
        if bundle.negatives or bundle.positives != (bundle.n + 1,):
            raise WrongBundleClass(f"the Candelas route needs O(n+1) over P^n, got {bundle.label()}")
        if insertions.m != 1:
            raise Inapplicable("the Candelas potential only yields one-point invariants")
        potential = candelas_potential(bundle.n, cfg.max_degree)
        table = InvariantTable(bundle, label=f"K_d({insertions.label()}) [Candelas]")
        for d, value in sorted(potential.instantons.items()):
            table.add(d, insertions.points, value)
        return table

    def _route_closed_form(self, cfg: JobConfig, bundle: BundleSpec, insertions: InsertionSpec) -> InvariantTable:
        table = InvariantTable(bundle, label=f"K_d({insertions.label()}) [closed form]")
        degrees = range(1, cfg.max_degree + 1)
        n = bundle.n
        if insertions.m == 2 and not bundle.positives and bundle.negatives == (1,) * (n + 1) \
                and insertions.points == ((n, 0), (n, 0)):
            for d in degrees:
                table.add(d, insertions.points, multiple_cover(n, d))
            return table
        if insertions.m == 1 and not insertions.has_psi:
            for d in degrees:
                table.add(d, insertions.points, concave_closed_form(bundle, d))
            return table
        raise Inapplicable(
            f"no closed formula for {insertions.label()} on {bundle.label()}; "
            "closed forms cover rank V- >= 2 one-point and the multiple-cover two-point case"
        )

    # ============ ORACLE ============

    def _oracle_check(self, cfg: JobConfig, bundle: BundleSpec, insertions: InsertionSpec, result: ComputeResult):
        """Degree-1 localization under every generic weight vector, in the geometric convention"""
        computed = result.table.get(1, insertions.points)
        if computed is None:
            result.oracle_passed = False
            return
        sign = presentation_sign(insertions.points, cfg.descendent_sign)
        result.oracle_values = [localize_degree1(bundle, insertions, w) for w in default_weight_vectors()]
        result.oracle_passed = all(v == sign * computed for v in result.oracle_values)
        logger.info("[Router] degree-1 oracle %s: %s vs %s", "agrees" if result.oracle_passed else "DISAGREES",
                    result.oracle_values, computed)

    # ============ OUTPUT ============

    def render(self, cfg: JobConfig, result: ComputeResult) -> str:
        return self.synthesizer.render(
            result.table, cfg.output_format, cfg.max_degree, result.pipeline_class,
            eta=result.eta if cfg.eta else None, hint=cfg.decimal_hint, eta_label=result.eta_label,
        )

    def summarize_checks(self, result: ComputeResult) -> List[str]:
        """Lines describing the optional checks; written to stderr by the CLI"""
        lines = []
        if result.integrality is not None:
            if result.integrality.passed:
                lines.append(f"✓ integrality: all {len(result.integrality.rows)} eta values integral")
            for row in result.integrality.failures():
                lines.append(f"✗ integrality: d={row.d} gives {row.value}")
        if result.oracle_passed is not None:
            mark = "✓" if result.oracle_passed else "✗"
            values = ", ".join(str(v) for v in result.oracle_values) or "no degree-1 row"
            lines.append(f"{mark} degree-1 localization: {values}")
        return lines

    def run_compute(self, cfg: JobConfig) -> Tuple[str, List[str], int]:
        """
        Compute and render.

        Returns:
            (rendered output, check summary lines, exit code)
        """
        result = self.route(cfg)
        exit_code = EXIT_OK if result.passed else EXIT_CHECK_FAILED
        return self.render(cfg, result), self.summarize_checks(result), exit_code


def run_compute(cfg: JobConfig) -> str:
    """Rendered InvariantTable for cfg"""
    output, _, _ = RouterAgent().run_compute(cfg)
    return output

# support/response_synthesizer.py
"""
Response Synthesizer
Renders invariant tables as text, CSV or JSON and formats check reports
Output is deterministic: rows are sorted by (d, insertions)
"""

import csv
import io
import json
from decimal import Context, Decimal
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

import sys
import os

# Add parent directory to path for imports
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from config.settings import DECIMAL_HINT_DIGITS, OUTPUT_FORMATS
from support.errors import ConfigError
from support.job_config import format_insertion

HINT_FIELD = "approx (non-authoritative)"


def format_rational(value: Optional[Fraction]) -> Optional[str]:
    """Exact string: integers without a denominator, everything else as p/q"""
    return None if value is None else str(Fraction(value))


def decimal_hint(value: Fraction, digits: int = DECIMAL_HINT_DIGITS) -> str:
    """Rounded decimal rendering for eyeballing; never fed back into computation"""
    ctx = Context(prec=digits)
    return str(ctx.divide(Decimal(value.numerator), Decimal(value.denominator)))


def signature_label(signature: Sequence) -> str:
    return ";".join(format_insertion(h, w) for h, w in signature)


class ResponseSynthesizer:
    """
    Turns an InvariantTable (plus optional eta values) into the three
    output formats, and check results into a human-readable report.
    """

    # ============ ROWS ============

    def build_rows(self, table, eta=None, hint: bool = False) -> List[Dict[str, Any]]:
        """
        Flatten a table into sorted row dicts

        Args:
            table: InvariantTable of K values
            eta: optional InvariantTable of eta values with the same keys
            hint: add the rounded decimal column

        Returns:
            List of dicts with keys d, insertions, K (and eta, hint when asked)
        """
        rows = []
        for d, signature, value in table.sorted_rows():
            row = {"d": d, "signature": signature, "insertions": signature_label(signature), "K": value}
            if eta is not None:
                row["eta"] = eta.get(d, signature)
            if hint:
                row[HINT_FIELD] = decimal_hint(value)
            rows.append(row)
        return rows

    # ============ FORMATS ============

    def to_table(self, table, eta=None, hint: bool = False, eta_label: str = "eta") -> str:
        rows = self.build_rows(table, eta, hint)
        fields = ["d", "insertions", "K"]
        if eta is not None:
            fields.append("eta")
        if hint:
            fields.append(HINT_FIELD)
        items = []
        for row in rows:
            item = dict(row)
            item["K"] = format_rational(row["K"])
            if eta is not None:
                item["eta"] = format_rational(row["eta"]) or ""
            items.append(item)
        title = f"{table.label or 'K_d'} for {table.bundle.label()}"
        if eta is not None and eta_label != "eta":
            title += f"  [eta: {eta_label}]"
        return title + "\n" + self.create_comparison_table(items, fields) + "\n"

    def to_csv(self, table, eta=None, hint: bool = False) -> str:
        rows = self.build_rows(table, eta, hint)
        fields = ["d", "insertions", "K"]
        if eta is not None:
            fields.append("eta")
        if hint:
            fields.append(HINT_FIELD)
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=fields, extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        for row in rows:
            out = dict(row)
            out["K"] = format_rational(row["K"])
            if eta is not None:
                out["eta"] = format_rational(row["eta"]) or ""
            writer.writerow(out)
        return buffer.getvalue()

    def to_json(self, table, max_degree: int, pipeline_class: str, eta=None) -> str:
        """JSON document matching data/invariant_table.schema.json"""
        document = {
            "bundle": {
                "n": table.bundle.n,
                "positives": list(table.bundle.positives),
                "negatives": list(table.bundle.negatives),
            },
            "invariants": [
                {
                    "d": row["d"],
                    "insertions": [{"h": h, "psi": w} for h, w in row["signature"]],
                    "K": format_rational(row["K"]),
                    "eta": format_rational(row.get("eta")),
                }
                for row in self.build_rows(table, eta)
            ],
            "meta": {"maxDegree": max_degree, "pipelineClass": pipeline_class},
        }
        return json.dumps(document, indent=2, ensure_ascii=False) + "\n"

    def render(self, table, output_format: str, max_degree: int, pipeline_class: str,
               eta=None, hint: bool = False, eta_label: str = "eta") -> str:
        if output_format == "table":
            return self.to_table(table, eta, hint, eta_label)
        if output_format == "csv":
            return self.to_csv(table, eta, hint)
        if output_format == "json":
            return self.to_json(table, max_degree, pipeline_class, eta)
        raise ConfigError(f"format must be one of {OUTPUT_FORMATS}, got {output_format!r}")

    def create_comparison_table(self, items: List[Dict[str, Any]], fields: List[str]) -> str:
        """
        Create a simple text-based table

        Args:
            items: List of row dicts
            fields: List of field names to include

        Returns:
            Formatted table
        """
        if not items:
            return "No rows."

        # Calculate column widths
        col_widths = {field: len(field) for field in fields}
        for item in items:
            for field in fields:
                col_widths[field] = max(col_widths[field], len(str(item.get(field, ''))))

        header = " | ".join(field.ljust(col_widths[field]) for field in fields)
        separator = "-" * len(header)
        rows = [
            " | ".join(str(item.get(field, '')).rjust(col_widths[field]) for field in fields).rstrip()
            for item in items
        ]
        return "\n".join([header.rstrip(), separator] + rows)

    # ============ REPORTS ============

    def format_check_report(self, title: str, results) -> str:
        """
        Banner report with one line per check

        Args:
            title: heading
            results: objects with name, passed, detail and notes attributes
        """
        lines = ["=" * 60, title, "=" * 60]
        for result in results:
            mark = "✓" if result.passed else "✗"
            lines.append(f"{mark} {result.name}" + (f": {result.detail}" if result.detail else ""))
            for note in getattr(result, "notes", ()):
                lines.append(f"    note: {note}")
        passed = sum(1 for r in results if r.passed)
        lines.append("=" * 60)
        lines.append(f"{passed}/{len(results)} checks passed")
        return "\n".join(lines) + "\n"

    def format_error(self, error: Exception) -> str:
        return f"✗ {type(error).__name__}: {error}"


# Singleton instance
_synthesizer_instance = None

def get_synthesizer() -> ResponseSynthesizer:
    """Get singleton instance of ResponseSynthesizer"""
    global _synthesizer_instance
    if _synthesizer_instance is None:
        _synthesizer_instance = ResponseSynthesizer()
    return _synthesizer_instance

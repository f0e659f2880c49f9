# support/knowledge_base.py
"""
Knowledge Base Access Layer
Loads the transcribed reference tables for O(3) + O(-3) over P^5 from data/golden
This is NOT a tool - just raw data retrieval
"""

import csv
import logging
import re
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import sys
import os

# Add parent directory to path for imports
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from config.settings import GOLDEN_BUNDLE, GOLDEN_DIR, GOLDEN_FILES
from support.errors import ConfigError
from support.job_config import parse_insertion

logger = logging.getLogger(__name__)

# "K[H^2;tau1(H)]" -> ("K", "H^2;tau1(H)")
_COLUMN = re.compile(r"^(K|eta)\[(.+)\]$")


class KnowledgeBase:
    """
    Read-only access to the golden CSV files.

    Each file has a "d" column, one "K[...]" column per insertion signature,
    optional "eta[...]" columns and an optional free-text "note" column.
    Stored values follow the printed tables, so one-point descendent columns
    are in the published sign convention.
    """

    def __init__(self, golden_dir: Path = None):
        self.golden_dir = Path(golden_dir or GOLDEN_DIR)
        self._cache: Dict[str, Tuple[Dict, Dict, Dict[int, str]]] = {}

    # ============ RAW LOADING ============

    def available(self) -> List[str]:
        """Names of the tables whose files exist"""
        return [name for name, file in GOLDEN_FILES.items() if (self.golden_dir / file).exists()]

    def _load(self, name: str):
        if name in self._cache:
            return self._cache[name]
        if name not in GOLDEN_FILES:
            raise ConfigError(f"unknown golden table {name!r}; expected one of {sorted(GOLDEN_FILES)}")
        path = self.golden_dir / GOLDEN_FILES[name]
        try:
            with open(path, newline="", encoding="utf-8") as handle:
                reader = csv.DictReader(handle)
                rows = list(reader)
                header = reader.fieldnames or []
        except OSError as exc:
            raise ConfigError(f"cannot read golden table {path}: {exc}")

        columns = {}
        for column in header:
            match = _COLUMN.match(column)
            if match:
                signature = tuple(parse_insertion(x) for x in match.group(2).split(";"))
                columns[column] = (match.group(1), signature)

        k_values: Dict[Tuple[int, tuple], Fraction] = {}
        eta_values: Dict[Tuple[int, tuple], Fraction] = {}
        notes: Dict[int, str] = {}
        for row in rows:
            d = int(row["d"])
            for column, (kind, signature) in columns.items():
                text = (row.get(column) or "").strip()
                if not text:
                    continue
                target = k_values if kind == "K" else eta_values
                target[(d, signature)] = Fraction(text)
            note = (row.get("note") or "").strip()
            if note:
                notes[d] = note

        logger.debug("loaded %d golden rows from %s", len(k_values), path)
        self._cache[name] = (k_values, eta_values, notes)
        return self._cache[name]

    # ============ TABLE ACCESS ============

    def bundle(self):
        from tools.euler_data import BundleSpec
        return BundleSpec(GOLDEN_BUNDLE["n"], tuple(GOLDEN_BUNDLE["positives"]), tuple(GOLDEN_BUNDLE["negatives"]))

    def get_table(self, name: str):
        """
        K values of one golden table as printed, as an InvariantTable

        Args:
            name: "one_point" .. "two_point_descendents"

        Returns:
            InvariantTable
        """
        from tools.recovery import InvariantTable

        k_values, _, _ = self._load(name)
        table = InvariantTable(self.bundle(), label=f"golden {name}")
        for (d, signature), value in k_values.items():
            table.add(d, signature, value)
        return table

    def get_eta(self, name: str):
        """Printed eta columns of a golden table, or None when it has none"""
        from tools.recovery import InvariantTable

        _, eta_values, _ = self._load(name)
        if not eta_values:
            return None
        table = InvariantTable(self.bundle(), label=f"golden {name} eta")
        for (d, signature), value in eta_values.items():
            table.add(d, signature, value)
        return table

    def get_notes(self, name: str) -> Dict[int, str]:
        """Transcription notes keyed by degree"""
        return dict(self._load(name)[2])

    def get_signatures(self, name: str) -> List[tuple]:
        return sorted({signature for _, signature in self._load(name)[0]})

    def max_degree(self, name: str) -> Optional[int]:
        degrees = [d for d, _ in self._load(name)[0]]
        return max(degrees) if degrees else None


# Singleton instance
_kb_instance = None

def get_knowledge_base() -> KnowledgeBase:
    """Get singleton instance of KnowledgeBase"""
    global _kb_instance
    if _kb_instance is None:
        _kb_instance = KnowledgeBase()
    return _kb_instance

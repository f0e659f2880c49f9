# support/job_config.py
"""
Job Configuration
Holds one compute/check request and round-trips it through a flat key=value file
"""

import re
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import sys
import os

# Add parent directory to path for imports
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from config.settings import (
    DEFAULT_JOBS,
    DEFAULT_MAX_DEGREE,
    DEFAULT_OUTPUT_FORMAT,
    DESCENDENT_SIGN,
    DESCENDENT_SIGN_CONVENTIONS,
    OUTPUT_FORMATS,
)
from support.errors import ConfigError, InvalidInsertion

METHODS = ("pipeline", "candelas", "closed-form")

_DESCENDENT = re.compile(r"^(?:tau|τ)_?(\d+)\((.+)\)$")
_HYPERPLANE = re.compile(r"^H(?:\^(\d+))?$")

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


# ============ INSERTION SYNTAX ============

def parse_insertion(text: str) -> Tuple[int, int]:
    """
    Parse one marked-point decoration.

    Args:
        text: "1", "H", "H^k", "tauW(H^k)", "tau_W(H^k)" or "τW(H^k)"

    Returns:
        (hPower, psiPower)
    """
    raw = text.strip().replace(" ", "")
    psi = 0
    match = _DESCENDENT.match(raw)
    if match:
        psi = int(match.group(1))
        raw = match.group(2)
    if raw == "1":
        return 0, psi
    match = _HYPERPLANE.match(raw)
    if not match:
        raise InvalidInsertion(f"cannot parse insertion {text!r}; use 1, H, H^k or tauW(H^k)")
    return (int(match.group(1)) if match.group(1) else 1), psi


def format_insertion(h: int, psi: int) -> str:
    base = "1" if h == 0 else ("H" if h == 1 else f"H^{h}")
    return f"tau{psi}({base})" if psi else base


def _parse_bool(key: str, value: str) -> bool:
    v = value.strip().lower()
    if v in _TRUE:
        return True
    if v in _FALSE:
        return False
    raise ConfigError(f"{key} must be true or false, got {value!r}")


def _parse_ints(key: str, value: str) -> Tuple[int, ...]:
    try:
        return tuple(int(x) for x in value.split(",") if x.strip())
    except ValueError:
        raise ConfigError(f"{key} must be a comma-separated list of integers, got {value!r}")


def _parse_int(key: str, value: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"{key} must be an integer, got {value!r}")


# ============ JOB CONFIG ============

@dataclass
class JobConfig:
    """
    One request: the bundle, the insertions, the truncation order and output flags.
    Flags given on the command line override values read from a config file.
    """
    n: Optional[int] = None
    positives: Tuple[int, ...] = ()
    negatives: Tuple[int, ...] = ()
    points: Optional[int] = None
    insertions: List[Tuple[int, int]] = field(default_factory=list)
    max_degree: int = DEFAULT_MAX_DEGREE
    output_format: str = DEFAULT_OUTPUT_FORMAT
    eta: bool = False
    integrality: bool = False
    oracle_check: bool = False
    consistency_checks: bool = False
    decimal_hint: bool = False
    method: str = "pipeline"
    descendent_sign: str = DESCENDENT_SIGN
    jobs: int = DEFAULT_JOBS

    # key in the file -> attribute
    _KEYS = {
        "n": "n",
        "convex": "positives",
        "concave": "negatives",
        "points": "points",
        "insert": "insertions",
        "max_degree": "max_degree",
        "format": "output_format",
        "eta": "eta",
        "integrality": "integrality",
        "oracle_check": "oracle_check",
        "consistency_checks": "consistency_checks",
        "decimal_hint": "decimal_hint",
        "method": "method",
        "descendent_sign": "descendent_sign",
        "jobs": "jobs",
    }

    # ============ VALIDATION ============

    def validate(self) -> "JobConfig":
        if self.n is None:
            raise ConfigError("the projective dimension n is required (--n)")
        if self.max_degree < 1:
            raise ConfigError(f"max_degree must be >= 1, got {self.max_degree}")
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigError(f"format must be one of {OUTPUT_FORMATS}, got {self.output_format!r}")
        if self.method not in METHODS:
            raise ConfigError(f"method must be one of {METHODS}, got {self.method!r}")
        if self.descendent_sign not in DESCENDENT_SIGN_CONVENTIONS:
            raise ConfigError(f"descendent_sign must be one of {DESCENDENT_SIGN_CONVENTIONS}")
        if self.jobs < 1:
            raise ConfigError(f"jobs must be >= 1, got {self.jobs}")
        points = self.points if self.points is not None else len(self.insertions)
        if points != len(self.insertions):
            raise InvalidInsertion(f"--points {points} but {len(self.insertions)} insertion(s) given")
        if points not in (1, 2):
            raise InvalidInsertion(f"only one or two marked points are supported, got {points}")
        return self

    def bundle_dict(self) -> Dict[str, Any]:
        return {"n": self.n, "positives": list(self.positives), "negatives": list(self.negatives)}

    # ============ FILE ROUND TRIP ============

    def to_text(self) -> str:
        """Flat key=value text; JobConfig.from_text(cfg.to_text()) == cfg"""
        lines = []
        for key, attr in self._KEYS.items():
            value = getattr(self, attr)
            if value is None:
                continue
            if attr in ("positives", "negatives"):
                text = ",".join(str(x) for x in value)
            elif attr == "insertions":
                text = ",".join(format_insertion(h, w) for h, w in value)
            elif isinstance(value, bool):
                text = "true" if value else "false"
            else:
                text = str(value)
            lines.append(f"{key}={text}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "JobConfig":
        values: Dict[str, Any] = {}
        for number, line in enumerate(text.splitlines(), start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"line {number}: expected key=value, got {line!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            if key not in cls._KEYS:
                raise ConfigError(f"line {number}: unknown key {key!r}")
            attr = cls._KEYS[key]
            if attr in ("positives", "negatives"):
                values[attr] = _parse_ints(key, value)
            elif attr == "insertions":
                values[attr] = [parse_insertion(x) for x in value.split(",") if x.strip()]
            elif attr in ("n", "points", "max_degree", "jobs"):
                values[attr] = _parse_int(key, value)
            elif attr in ("eta", "integrality", "oracle_check", "consistency_checks", "decimal_hint"):
                values[attr] = _parse_bool(key, value)
            else:
                values[attr] = value
        return cls(**values)

    @classmethod
    def load(cls, path: str) -> "JobConfig":
        try:
            return cls.from_text(Path(path).read_text(encoding="utf-8"))
        except OSError as exc:
            raise ConfigError(f"cannot read config file {path}: {exc}")

    def save(self, path: str):
        Path(path).write_text(self.to_text(), encoding="utf-8")

    def override(self, **changes) -> "JobConfig":
        """Copy with every non-None change applied"""
        known = {f.name for f in fields(self)}
        applied = {k: v for k, v in changes.items() if v is not None and k in known}
        return replace(self, **applied)

    # ============ SUMMARY ============

    def get_context_summary(self) -> str:
        """Human-readable summary of the request"""
        parts = [f"n={self.n}"]
        if self.positives:
            parts.append("convex=" + ",".join(map(str, self.positives)))
        if self.negatives:
            parts.append("concave=" + ",".join(map(str, self.negatives)))
        if self.insertions:
            parts.append("insert=" + ", ".join(format_insertion(h, w) for h, w in self.insertions))
        parts.append(f"D={self.max_degree}")
        parts.append(f"method={self.method}")
        return " | ".join(parts)

# config/settings.py
"""
Configuration settings for the Concavex Mirror Engine
Every tunable lives here; environment variables (or a .env file) override the defaults
"""

import os
from pathlib import Path

from dotenv import load_dotenv

load_dotenv()

PROJECT_ROOT = Path(__file__).resolve().parent.parent

# ============ SERIES CONFIGURATION ============
DEFAULT_MAX_DEGREE = int(os.getenv("MIRROR_MAX_DEGREE", "10"))

# tBound = working p-precision + D + slack
T_BOUND_SLACK = 0

# ============ OUTPUT CONFIGURATION ============
OUTPUT_FORMATS = ("table", "csv", "json")
DEFAULT_OUTPUT_FORMAT = os.getenv("MIRROR_OUTPUT_FORMAT", "table")

# "published" reads descendent rows (psi >= 1) from the presentation series and negates
# the one-point ones, matching the printed tables; "geometric" reads the transported series
DESCENDENT_SIGN_CONVENTIONS = ("published", "geometric")
DESCENDENT_SIGN = os.getenv("MIRROR_DESCENDENT_SIGN", "published")

DECIMAL_HINT_DIGITS = 12

# ============ EXECUTION ============
DEFAULT_JOBS = int(os.getenv("MIRROR_JOBS", "1"))

# selftest runs every check at this truncation order
SELFTEST_MAX_DEGREE = 3

# ============ LOGGING ============
LOG_LEVEL = os.getenv("MIRROR_LOG_LEVEL", "WARNING")
LOG_FORMAT = os.getenv(
    "MIRROR_LOG_FORMAT",
    "%(asctime)s %(levelname)s [%(name)s] %(message)s",
)

# ============ EXIT CODES ============
EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INVALID = 2
EXIT_SHAPE = 3

# ============ GOLDEN DATA ============
GOLDEN_DIR = Path(os.getenv("MIRROR_GOLDEN_DIR", str(PROJECT_ROOT / "data" / "golden")))

GOLDEN_FILES = {
    "one_point": "one_point.csv",
    "one_point_descendents": "one_point_descendents.csv",
    "two_point": "two_point.csv",
    "two_point_descendents": "two_point_descendents.csv",
}

# The tables all describe O(3) + O(-3) over P^5
GOLDEN_BUNDLE = {"n": 5, "positives": (3,), "negatives": (3,)}

SCHEMA_PATH = PROJECT_ROOT / "data" / "invariant_table.schema.json"

# ============ LOCALIZATION ORACLE ============
# Three generic torus weight vectors, long enough for P^n with n <= 7
DEFAULT_ORACLE_WEIGHTS = (
    (2, 3, 7, 19, 41, 83, 167, 337),
    (5, -1, 11, 29, -13, 61, 103, -227),
    (1, 4, 9, 25, 64, 169, 441, 1156),
)
ORACLE_WEIGHTS_ENV = os.getenv("MIRROR_ORACLE_WEIGHTS", "")

# ============ JSON OUTPUT SCHEMA DOCUMENTATION ============
INVARIANT_TABLE_SCHEMA = """
INVARIANT TABLE JSON FORMAT:

{
  "bundle": {"n": int, "positives": [int], "negatives": [int]},
  "invariants": [
    {
      "d": int,
      "insertions": [{"h": int, "psi": int}],   one entry per marked point
      "K": "p/q",                               exact rational string
      "eta": "p/q" or null                      Aspinwall-Morrison value when requested
    }
  ],
  "meta": {"maxDegree": int, "pipelineClass": "mixed" | "concave2"}
}

Rows are sorted by (d, insertions). Integers print without a denominator.
"""

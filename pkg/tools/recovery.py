# tools/recovery.py
"""
Recovery Tools
Read Gromov-Witten invariants off hypergeometric series written in the mirror coordinate
"""

import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable, Dict, List, Optional, Tuple

# Add parent directory to path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from config.settings import DEFAULT_JOBS, DESCENDENT_SIGN, DESCENDENT_SIGN_CONVENTIONS
from support.errors import ConfigError, DimensionMismatch, HeightMismatch, ShapeViolation
from support.hbar_laurent import HbarLaurent
from tools.euler_data import BundleClass, BundleSpec, InsertionSpec, classify, dimension_check
from tools.mirror_transforms import HeightSeries, SeriesForm, presentation_height, transported_height

logger = logging.getLogger(__name__)

Signature = Tuple[Tuple[int, int], ...]


# ============ DOMAIN TYPES ============

@dataclass(frozen=True)
class ExtractionCell:
    """
    Coefficient of Q^d in the p^n part of p^s * R, as a polynomial in T.
    value[j] is the HbarLaurent coefficient of T^j.
    """
    d: int
    s: int
    value: Tuple[HbarLaurent, ...]

    def is_zero(self) -> bool:
        return not any(self.value)

    def t_degree(self) -> int:
        nonzero = [j for j, c in enumerate(self.value) if c]
        return max(nonzero) if nonzero else 0

    def hbar_exponents(self) -> Tuple[int, ...]:
        return tuple(sorted({e for c in self.value for e in c.exponents()}))

    def coefficient(self, t_power: int, hbar_exp: int) -> Fraction:
        if t_power >= len(self.value):
            return Fraction(0)
        return self.value[t_power][hbar_exp]

    def __repr__(self) -> str:
        parts = [f"({c})*T^{j}" for j, c in enumerate(self.value) if c]
        return f"Cell(d={self.d}, s={self.s}: {' + '.join(parts) or '0'})"


@dataclass
class InvariantTable:
    """
    (degree, signature) -> exact invariant.

    A signature lists (hPower, psiPower) per marked point.
    """
    bundle: BundleSpec
    rows: Dict[Tuple[int, Signature], Fraction] = field(default_factory=dict)
    label: str = ""

    def add(self, d: int, signature: Signature, value: Fraction):
        self.rows[(d, tuple(tuple(p) for p in signature))] = Fraction(value)

    def get(self, d: int, signature: Signature) -> Optional[Fraction]:
        return self.rows.get((d, signature))

    def signatures(self) -> List[Signature]:
        return sorted({sig for _, sig in self.rows})

    def degrees(self, signature: Signature = None) -> List[int]:
        return sorted({d for d, sig in self.rows if signature is None or sig == signature})

    def column(self, signature: Signature) -> Dict[int, Fraction]:
        return {d: v for (d, sig), v in sorted(self.rows.items()) if sig == signature}

    def sorted_rows(self) -> List[Tuple[int, Signature, Fraction]]:
        return [(d, sig, v) for (d, sig), v in sorted(self.rows.items())]

    def merge(self, other: "InvariantTable") -> "InvariantTable":
        rows = dict(self.rows)
        rows.update(other.rows)
        return InvariantTable(self.bundle, rows, self.label or other.label)

    def __len__(self) -> int:
        return len(self.rows)


# ============ SIGN BOOKKEEPING ============

def cell_prefactor(v: int, a: int) -> Tuple[int, int]:
    """
    Sign and hbar-exponent of a recovery cell: (-1)^(v+a) hbar^(v-2-a).

    Every reading below goes through this function. The divisor-style rows
    (one point, inserted p^0 or p^1) are the cases a=1 and a=0.
    """
    return (-1 if (v + a) % 2 else 1), v - 2 - a


def _convention(convention: Optional[str]) -> str:
    convention = convention or DESCENDENT_SIGN
    if convention not in DESCENDENT_SIGN_CONVENTIONS:
        raise ConfigError(f"descendent sign convention must be one of {DESCENDENT_SIGN_CONVENTIONS}, got {convention!r}")
    return convention


def presentation_sign(signature: Signature, convention: str = None) -> int:
    """Extra sign applied to one-point descendent rows in the published convention"""
    if _convention(convention) == "published" and len(signature) == 1 and signature[0][1] > 0:
        return -1
    return 1


def uses_presentation_series(signature: Signature, convention: str = None) -> bool:
    """Published descendent rows are read from presentation_height instead of transported_height"""
    return _convention(convention) == "published" and any(psi > 0 for _, psi in signature)


def _single_hbar(cell: ExtractionCell, expected_exp: int, max_t: int, what: str):
    stray = [e for e in cell.hbar_exponents() if e != expected_exp]
    if stray:
        raise ShapeViolation(f"{what}: d={cell.d} s={cell.s} cell has hbar^{stray}, expected only hbar^{expected_exp}: {cell}")
    if cell.t_degree() > max_t:
        raise ShapeViolation(f"{what}: d={cell.d} s={cell.s} cell has T-degree {cell.t_degree()} > {max_t}: {cell}")


def read_divisor_row(cell: ExtractionCell, v: int) -> Fraction:
    """s=1 row: (-1)^v hbar^(v-2) d K"""
    sign, hexp = cell_prefactor(v, 0)
    _single_hbar(cell, hexp, 0, "s=1 row")
    return cell.coefficient(0, hexp) / (sign * cell.d)


def check_constant_row(cell: ExtractionCell, v: int, K: Fraction):
    """s=0 row: (-1)^v hbar^(v-3) (2 - v - d T) K, written as (-1)^(v+1) hbar^(v-3) ((v-2) + d T) K"""
    sign, hexp = cell_prefactor(v, 1)
    _single_hbar(cell, hexp, 1, "s=0 row")
    expected = (sign * (v - 2) * K, sign * cell.d * K)
    found = (cell.coefficient(0, hexp), cell.coefficient(1, hexp))
    if found != expected:
        raise ShapeViolation(f"s=0 and s=1 rows disagree at d={cell.d}: expected {expected}, found {found}")


def read_ladder(cell: ExtractionCell, v: int, a: int) -> List[Fraction]:
    """
    Ladder cell (-1)^(v+a) hbar^(v-2-a) sum_j T^j/j! L_j; returns [L_0, ..., L_a].
    L_0 is the invariant the cell targets, L_j raises the H-power by j and lowers psi by j.
    """
    sign, hexp = cell_prefactor(v, a)
    _single_hbar(cell, hexp, a, f"ladder a={a}")
    return [sign * cell.coefficient(j, hexp) * factorial(j) for j in range(a + 1)]


def read_leading(cell: ExtractionCell, v: int, a: int) -> Fraction:
    """T^0 term of a presentation-series cell; only the hbar shape is checked"""
    sign, hexp = cell_prefactor(v, a)
    _single_hbar(cell, hexp, cell.t_degree(), f"leading a={a}")
    return sign * cell.coefficient(0, hexp)


# ============ EXTRACTION ============

def extract_cell(R: HeightSeries, d: int, s: int) -> ExtractionCell:
    """
    Coefficient of Q^d of the p^n part of p^s R.

    Args:
        R: raw series already re-expanded in the mirror coordinate
        d: degree
        s: inserted p-power (any p^{k*} factor of (1,v) data folds into s)
    """
    if R.form is not SeriesForm.RAW or not R.mirror_coordinate:
        raise HeightMismatch("extraction needs a raw series in the mirror coordinate")
    n = R.series.n
    p_exp = n - s
    if p_exp < 0:
        return ExtractionCell(d, s, (HbarLaurent.zero(),))
    column = R.series.t_polynomial(d)
    top = max(column, default=0)
    return ExtractionCell(d, s, tuple(
        column[j][p_exp] if j in column else HbarLaurent.zero() for j in range(top + 1)
    ))


def _map_degrees(fn: Callable[[int], Fraction], D: int, jobs: int) -> List[Fraction]:
    degrees = range(1, D + 1)
    if jobs and jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, degrees))
    return [fn(d) for d in degrees]


def require_admissible(b: BundleSpec, ins: InsertionSpec):
    verdict = dimension_check(b, ins)
    if not verdict.admissible:
        hint = ""
        if ins.m == 1 and not ins.has_psi and verdict.required_weight >= 0:
            hint = f" (try --insert H^{verdict.required_weight})"
        raise DimensionMismatch(verdict.reason + hint)
    return verdict


# ============ ONE POINT ============

def one_point(b: BundleSpec, h_power: int, D: int, jobs: int = None,
              consistency_checks: bool = False) -> InvariantTable:
    """
    K_d(H^h_power) for 1 <= d <= D.

    MIXED bundles read the s=1 row of height-h (0,1) data and re-derive the
    s=0 row; s >= 2 rows must vanish. CONCAVE2 bundles use (1,0) data.
    """
    ins = InsertionSpec.one_point(h_power)
    require_admissible(b, ins)
    jobs = jobs or DEFAULT_JOBS
    signature = ins.points
    table = InvariantTable(b, label=f"K_d({ins.label()})")

    if classify(b) is BundleClass.CONCAVE2:
        for d, value in zip(range(1, D + 1), _descendent_family(b, h_power, 0, D, jobs)):
            table.add(d, signature, value[0])
        return table

    R = transported_height(b, h_power, D)

    def at_degree(d: int) -> Fraction:
        K = read_divisor_row(extract_cell(R, d, 1), 1)
        check_constant_row(extract_cell(R, d, 0), 1, K)
        for s in range(2, b.n + 1):
            if not extract_cell(R, d, s).is_zero():
                raise ShapeViolation(f"s={s} row does not vanish at d={d}")
        logger.debug("K_%d(%s) = %s", d, ins.label(), K)
        return K

    values = _map_degrees(at_degree, D, jobs)
    if consistency_checks:
        others = _descendent_family(b, h_power, 0, D, jobs)
        for d, (mine, theirs) in enumerate(zip(values, others), start=1):
            if mine != theirs[0]:
                raise ShapeViolation(f"(0,1) and (1,0) routes disagree at d={d}: {mine} vs {theirs[0]}")
    for d, value in enumerate(values, start=1):
        table.add(d, signature, value)
    return table


def _descendent_family(b: BundleSpec, i: int, w: int, D: int, jobs: int,
                       presentation: bool = False) -> List[List[Fraction]]:
    """
    Per degree, [K(tau_0(H^(i+w))), ..., K(tau_w(H^i))] from (1,0) data in the
    geometric convention, with every ladder cross-checked. With presentation,
    the last entry is replaced by the T^0 reading of the presentation series.
    """
    R = transported_height(b, 0, D)
    P = presentation_height(b, 0, D) if presentation else None
    total = i + w

    def at_degree(d: int) -> List[Fraction]:
        ladders = [read_ladder(extract_cell(R, d, total - a), 0, a) for a in range(w + 1)]
        direct = [ladder[0] for ladder in ladders]
        _check_ladders(ladders, direct, d)
        if P is not None:
            direct[w] = read_leading(extract_cell(P, d, i), 0, w)
        return direct

    return _map_degrees(at_degree, D, jobs)


def _check_ladders(ladders: List[List[Fraction]], direct: List[Fraction], d: int):
    for a, ladder in enumerate(ladders):
        for j in range(1, a + 1):
            if ladder[j] != direct[a - j]:
                raise ShapeViolation(
                    f"T^{j} coefficient of the a={a} cell at d={d} is {ladder[j]}, "
                    f"but the a={a - j} cell gives {direct[a - j]}"
                )


def one_point_descendent(b: BundleSpec, i: int, w: int, D: int, jobs: int = None,
                         convention: str = None) -> InvariantTable:
    """
    K_d(tau_w(H^i)) for 1 <= d <= D from (1,0) data with k* = i, s = 0, a = w.

    The published convention reads the presentation series and negates the row;
    the geometric one reads the transported series directly.
    """
    ins = InsertionSpec.one_point(i, w)
    require_admissible(b, ins)
    jobs = jobs or DEFAULT_JOBS
    sign = presentation_sign(ins.points, convention)
    presentation = uses_presentation_series(ins.points, convention)
    table = InvariantTable(b, label=f"K_d({ins.label()})")
    for d, family in enumerate(_descendent_family(b, i, w, D, jobs, presentation), start=1):
        table.add(d, ins.points, sign * family[w])
    return table


# ============ TWO POINTS ============

def _two_point_series(b: BundleSpec, k1: int, i: int, psi: int, D: int) -> Tuple[HeightSeries, int, int]:
    """Transported height-k1 series, or height-i with the points swapped when only that one is normalized"""
    try:
        return transported_height(b, k1, D), k1, i
    except ShapeViolation:
        if psi or k1 == i:
            raise
        logger.info("swapping marked points: height %d is not normalized for %s", k1, b.label())
        return transported_height(b, i, D), i, k1


def two_point(b: BundleSpec, k1: int, i: int, psi: int, D: int, jobs: int = None,
              convention: str = None) -> InvariantTable:
    """
    K_d(H^k1, tau_psi(H^i)) for 1 <= d <= D.

    Multiplies the height-k1 mirror-coordinate series by p^(i+psi-a) for
    a = 0..psi; each cell is a ladder whose T^0 term is one invariant of the
    family K(H^k1, H^(i+psi-a) psi^a). Published descendent rows take the
    a = psi value from the presentation series instead.
    """
    ins = InsertionSpec.two_point(k1, i, psi)
    require_admissible(b, ins)
    jobs = jobs or DEFAULT_JOBS
    R, height, inserted = _two_point_series(b, k1, i, psi, D)
    total = inserted + psi
    P = presentation_height(b, height, D) if uses_presentation_series(ins.points, convention) else None

    def at_degree(d: int) -> Fraction:
        ladders = [read_ladder(extract_cell(R, d, total - a), 1, a) for a in range(psi + 1)]
        direct = [ladder[0] for ladder in ladders]
        _check_ladders(ladders, direct, d)
        if P is not None:
            return read_leading(extract_cell(P, d, inserted), 1, psi)
        return direct[psi]

    table = InvariantTable(b, label=f"K_d({ins.label()})")
    for d, value in enumerate(_map_degrees(at_degree, D, jobs), start=1):
        table.add(d, ins.points, value)
    return table


def compute_insertions(b: BundleSpec, ins: InsertionSpec, D: int, jobs: int = None,
                       convention: str = None, consistency_checks: bool = False) -> InvariantTable:
    """Dispatch an InsertionSpec to the matching recovery routine"""
    if ins.m == 1:
        h, w = ins.points[0]
        if w:
            return one_point_descendent(b, h, w, D, jobs, convention)
        return one_point(b, h, D, jobs, consistency_checks)
    (k1, _), (i, psi) = ins.points
    return two_point(b, k1, i, psi, D, jobs, convention)

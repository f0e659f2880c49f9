# tools/closed_forms.py
"""
Closed Forms
Candelas potential, concave closed formula, multiple-cover law,
Aspinwall-Morrison inversion and integrality reporting
"""

import logging
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod
from typing import Dict, List, Mapping, Optional

# Add parent directory to path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from support.errors import Inapplicable, MissingDegrees, ShapeViolation
from support.log_q_series import shift_part, shift_t
from tools.euler_data import BundleSpec
from tools.mirror_transforms import mirror_inverse, normalize_pipeline
from tools.recovery import InvariantTable, Signature

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PotentialSeries:
    """Phi(T) = quadratic * T^2 + sum_d instantons[d] e^{dT}"""
    quadratic: Fraction
    instantons: Dict[int, Fraction] = field(default_factory=dict)


# ============ CANDELAS ============

def quintic_type_bundle(n: int) -> BundleSpec:
    return BundleSpec(n, (n + 1,), ())


def candelas_potential(n: int, D: int) -> PotentialSeries:
    """
    One-point potential of O(n+1) over P^n:
    Phi = (n+1) [y[0][1] y[n-3][1] - y[n-3][2]], re-expanded in T = y[0][1](t).

    Its e^{dT} coefficients are K_d(H^(n-3)).
    """
    if n < 4:
        raise Inapplicable(f"the Candelas potential needs n >= 4, got n={n}")
    b = quintic_type_bundle(n)
    k = n - 3
    table, _ = normalize_pipeline(b, k, D)
    phi_t = (table.get(0, 1) * table.get(k, 1) - table.get(k, 2)).scale(n + 1)
    phi = shift_t(phi_t, shift_part(mirror_inverse(b, D)))

    quadratic = Fraction(n + 1, 2)
    instantons: Dict[int, Fraction] = {}
    for (d, j), c in sorted(phi.terms.items()):
        value = c.scalar_value()
        if d == 0:
            if (j, value) != (2, quadratic):
                raise ShapeViolation(f"classical part of the potential has {value}*T^{j}")
        elif j:
            raise ShapeViolation(f"instanton part at Q^{d} depends on T (T^{j} term {value})")
        else:
            instantons[d] = value
    logger.info("Candelas potential for n=%d: K_1 = %s", n, instantons.get(1))
    return PotentialSeries(quadratic, {d: instantons.get(d, Fraction(0)) for d in range(1, D + 1)})


# ============ CONCAVE / MULTIPLE COVER ============

def concave_closed_form(b: BundleSpec, d: int) -> Fraction:
    """
    K_d(H^k) for rank V- >= 2, k = n - 2 - rk V+ + rk V-:
    (-1)^(d sum k_i) prod l_i prod (l_i d)! prod (k_i d - 1)! / (d!)^(n+1)
    when rank V- = 2, and 0 when rank V- > 2.
    """
    k = b.n - 2 - b.rank_plus + b.rank_minus
    if b.rank_minus < 2 or k <= 0:
        raise Inapplicable(
            f"closed concave formula needs rank V- >= 2 and k > 0; {b.label()} has "
            f"rank V- = {b.rank_minus}, k = {k}"
        )
    if b.rank_minus > 2:
        return Fraction(0)
    sign = -1 if (d * sum(b.negatives)) % 2 else 1
    top = prod(b.positives) * prod(factorial(l * d) for l in b.positives) \
        * prod(factorial(kk * d - 1) for kk in b.negatives)
    return Fraction(sign * top, factorial(d) ** (b.n + 1))


def multiple_cover(n: int, d: int) -> Fraction:
    """K_d(H^n, H^n) for O(-1)^(n+1) over P^n"""
    if n < 1 or d < 1:
        raise Inapplicable(f"multiple-cover law needs n >= 1 and d >= 1, got n={n}, d={d}")
    return Fraction(-1 if ((n + 1) * (d - 1)) % 2 else 1, d)


# ============ ASPINWALL-MORRISON ============

def _divisors(d: int) -> List[int]:
    return [e for e in range(1, d + 1) if d % e == 0]


def am_invert(K: InvariantTable, m: int, D: int) -> InvariantTable:
    """
    eta_d = K_d - sum_{e | d, e < d} eta_e (d/e)^(m-3), column by column.

    Raises:
        MissingDegrees: a divisor of some requested degree has no K value
    """
    eta = InvariantTable(K.bundle, label=f"eta ({K.label})" if K.label else "eta")
    for signature in K.signatures():
        column = K.column(signature)
        wanted = [d for d in range(1, D + 1) if d in column]
        values: Dict[int, Fraction] = {}
        for d in wanted:
            missing = [e for e in _divisors(d) if e not in column]
            if missing:
                raise MissingDegrees(f"eta_{d} needs K at degrees {missing}")
            correction = sum((values[e] * Fraction(d, e) ** (m - 3) for e in _divisors(d)[:-1]), Fraction(0))
            values[d] = column[d] - correction
            eta.add(d, signature, values[d])
    return eta


def am_resum(eta: InvariantTable, m: int, D: int) -> InvariantTable:
    """K_d = sum_{e | d} eta_e (d/e)^(m-3)"""
    K = InvariantTable(eta.bundle, label="resummed")
    for signature in eta.signatures():
        column = eta.column(signature)
        for d in range(1, D + 1):
            if not all(e in column for e in _divisors(d)):
                continue
            K.add(d, signature, sum((column[e] * Fraction(d, e) ** (m - 3) for e in _divisors(d)), Fraction(0)))
    return K


# ============ INTEGRALITY ============

@dataclass(frozen=True)
class IntegralityRow:
    d: int
    signature: Signature
    value: Fraction
    integral: bool


@dataclass(frozen=True)
class IntegralityReport:
    rows: List[IntegralityRow]

    @property
    def passed(self) -> bool:
        return all(row.integral for row in self.rows)

    def failures(self) -> List[IntegralityRow]:
        return [row for row in self.rows if not row.integral]


def integrality_report(eta: InvariantTable, divide_by_degree: bool = False) -> IntegralityReport:
    """
    Integer/non-integer verdict per row. divide_by_degree checks eta_d / d
    (instanton numbers for the quintic family).
    """
    rows = []
    for d, signature, value in eta.sorted_rows():
        checked = value / d if divide_by_degree else value
        rows.append(IntegralityRow(d, signature, checked, checked.denominator == 1))
    return IntegralityReport(rows)


@dataclass(frozen=True)
class DiscrepancyNote:
    d: int
    naive_eta: Fraction
    published_eta: Fraction
    difference: Fraction
    one_point_eta: Optional[Fraction]

    @property
    def explained_by_one_point(self) -> bool:
        return self.one_point_eta is not None and self.difference == self.one_point_eta

    def describe(self) -> str:
        text = (f"d={self.d}: naive inversion gives {self.naive_eta}, table lists {self.published_eta} "
                f"(difference {self.difference})")
        if self.explained_by_one_point:
            text += f"; the difference equals the one-point eta_{self.d} = {self.one_point_eta}"
        return text


def two_point_eta_notes(naive: Mapping[int, Fraction], published: Mapping[int, Fraction],
                        one_point_eta: Mapping[int, Fraction]) -> List[DiscrepancyNote]:
    """Informational comparison of a naive m=2 inversion with a printed eta column"""
    notes = []
    for d in sorted(set(naive) & set(published)):
        if naive[d] == published[d]:
            continue
        diff = naive[d] - published[d]
        notes.append(DiscrepancyNote(d, naive[d], published[d], diff, one_point_eta.get(d)))
    return notes

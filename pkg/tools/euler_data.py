# tools/euler_data.py
"""
Euler Data Tools
Linear-model numerators, the Omega monomial and the base hypergeometric series
for split concavex bundles V = sum O(l_i) + sum O(-k_i) over P^n
"""

import logging
import os
import sys
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import prod
from typing import Tuple

# Add parent directory to path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from config.settings import T_BOUND_SLACK
from support.errors import InvalidBundle, InvalidInsertion, PrecisionBudget, ShapeViolation
from support.job_config import format_insertion
from support.log_q_series import LogQSeries, exp_series
from support.pclass import PClass, invert_unit

logger = logging.getLogger(__name__)


class BundleClass(str, Enum):
    """Which recovery route a bundle takes"""
    MIXED = "mixed"          # full normalization pipeline
    CONCAVE2 = "concave2"    # rank of the concave part >= 2, no mirror transforms


# ============ DOMAIN TYPES ============

@dataclass(frozen=True)
class BundleSpec:
    """
    Split concavex bundle over P^n.

    Args:
        n: dimension of the projective space
        positives: convex twists l_i >= 1
        negatives: concave twists k_i >= 1 (the bundle carries O(-k_i))
    """
    n: int
    positives: Tuple[int, ...] = ()
    negatives: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "positives", tuple(int(l) for l in self.positives))
        object.__setattr__(self, "negatives", tuple(int(k) for k in self.negatives))
        if self.n < 1:
            raise InvalidBundle(f"projective dimension must be >= 1, got {self.n}")
        bad = [x for x in self.positives + self.negatives if x < 1]
        if bad:
            raise InvalidBundle(f"twists must be >= 1 (signs come from the list), got {bad}")
        total = sum(self.positives) + sum(self.negatives)
        if total != self.n + 1:
            raise InvalidBundle(
                f"sum of twists is {total} but must equal n+1 = {self.n + 1}; "
                "only the Calabi-Yau-type condition sum l + sum k = n+1 is supported"
            )

    @property
    def rank_plus(self) -> int:
        return len(self.positives)

    @property
    def rank_minus(self) -> int:
        return len(self.negatives)

    @property
    def p_exponent(self) -> int:
        """deg_p Omega = rk V+ - rk V-"""
        return self.rank_plus - self.rank_minus

    @property
    def working_dimension(self) -> int:
        """p-precision of normalized series: raw = Omega * normalized stays exact through p^n"""
        return self.n + max(0, -self.p_exponent)

    @property
    def budget(self) -> int:
        """y_{k,q} is meaningful for q + k <= n - deg_p Omega"""
        return self.n - self.p_exponent

    @property
    def bundle_class(self) -> BundleClass:
        return classify(self)

    def label(self) -> str:
        parts = [f"O({l})" for l in self.positives] + [f"O(-{k})" for k in self.negatives]
        return f"{' + '.join(parts) or '0'} over P^{self.n}"


@dataclass(frozen=True)
class OmegaMonomial:
    """Omega = e(V+)/e(V-) in the nonequivariant limit: coefficient * p^p_exponent"""
    coefficient: Fraction
    p_exponent: int

    def __post_init__(self):
        if not self.coefficient:
            raise InvalidBundle("Omega coefficient must be nonzero")

    def as_pclass(self, n: int) -> PClass:
        if self.p_exponent < 0:
            raise PrecisionBudget(
                f"Omega = {self.coefficient}*p^{self.p_exponent} has a negative p-power and is not a class on P^{n}"
            )
        return PClass.monomial(n, self.p_exponent, self.coefficient)


@dataclass(frozen=True)
class InsertionSpec:
    """
    Marked-point decorations: one (hPower, psiPower) pair per point.
    Only the last point may carry psi.
    """
    points: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        pts = tuple((int(h), int(w)) for h, w in self.points)
        object.__setattr__(self, "points", pts)
        if len(pts) not in (1, 2):
            raise InvalidInsertion(f"only one or two marked points are supported, got {len(pts)}")
        if any(h < 0 or w < 0 for h, w in pts):
            raise InvalidInsertion("hyperplane and psi powers must be >= 0")
        if any(w > 0 for _, w in pts[:-1]):
            raise InvalidInsertion("psi may only decorate the last marked point")

    @classmethod
    def one_point(cls, h: int, psi: int = 0) -> "InsertionSpec":
        return cls(((h, psi),))

    @classmethod
    def two_point(cls, h1: int, h2: int, psi: int = 0) -> "InsertionSpec":
        return cls(((h1, 0), (h2, psi)))

    @property
    def m(self) -> int:
        return len(self.points)

    @property
    def total_weight(self) -> int:
        return sum(h + w for h, w in self.points)

    @property
    def has_psi(self) -> bool:
        return self.points[-1][1] > 0

    def label(self) -> str:
        return ", ".join(format_insertion(h, w) for h, w in self.points)


@dataclass(frozen=True)
class DimensionVerdict:
    admissible: bool
    required_weight: int
    total_weight: int
    reason: str


# ============ OPERATIONS ============

def classify(b: BundleSpec) -> BundleClass:
    return BundleClass.CONCAVE2 if b.rank_minus >= 2 else BundleClass.MIXED


def omega(b: BundleSpec) -> OmegaMonomial:
    """Omega = prod l_i / prod (-k_i) * p^(rk V+ - rk V-)"""
    coefficient = Fraction(prod(b.positives), prod(-k for k in b.negatives))
    return OmegaMonomial(coefficient, b.p_exponent)


def _linear(n: int, a: int, c: int) -> PClass:
    return PClass.linear(n, a, c)


def numerator(b: BundleSpec, d: int, p_dim: int = None) -> PClass:
    """
    Raw numerator prod_l prod_{m=0}^{ld} (l p - m hbar) * prod_k prod_{m=1}^{kd-1} (-k p + m hbar).

    Degree 0 is Omega itself, available only when deg_p Omega >= 0.
    """
    n = b.n if p_dim is None else p_dim
    if d < 0:
        raise InvalidBundle(f"degree must be >= 0, got {d}")
    if d == 0:
        return omega(b).as_pclass(n)
    result = PClass.one(n)
    for l in b.positives:
        for m in range(l * d + 1):
            result = result * _linear(n, l, -m)
    for k in b.negatives:
        for m in range(1, k * d):
            result = result * _linear(n, -k, m)
    return result


def reduced_numerator(b: BundleSpec, d: int, p_dim: int = None) -> PClass:
    """
    numerator / Omega: drop the m=0 factor of each convex block and keep
    one (-k p) factor per concave block. Defaults to the working precision.
    """
    n = b.working_dimension if p_dim is None else p_dim
    if d < 0:
        raise InvalidBundle(f"degree must be >= 0, got {d}")
    result = PClass.one(n)
    if d == 0:
        return result
    for l in b.positives:
        for m in range(1, l * d + 1):
            result = result * _linear(n, l, -m)
    for k in b.negatives:
        for m in range(k * d):
            result = result * _linear(n, -k, m)
    return result


def numerator_degree(b: BundleSpec, d: int) -> int:
    """Number of linear factors in numerator(b, d); each term is homogeneous of this degree"""
    return sum(l * d + 1 for l in b.positives) + sum(k * d - 1 for k in b.negatives)


def hg_base(b: BundleSpec, D: int, normalized: bool, p_dim: int = None) -> LogQSeries:
    """
    Base hypergeometric series e^{-pt/hbar} sum_d q^d N_d / prod_{m=1}^d (p - m hbar)^(n+1).

    Args:
        b: the bundle
        D: q-truncation order
        normalized: use reduced numerators (series divided by Omega); otherwise raw numerators
        p_dim: p-precision; defaults to the working dimension (normalized) or n (raw)

    Returns:
        LogQSeries to order q^D. The raw series omits q^0 when Omega has negative p-power.
    """
    if D < 0:
        raise InvalidBundle(f"truncation order must be >= 0, got {D}")
    n_c = p_dim if p_dim is not None else (b.working_dimension if normalized else b.n)
    return _hg_base_cached(b, D, bool(normalized), n_c)


@lru_cache(maxsize=64)
def _hg_base_cached(b: BundleSpec, D: int, normalized: bool, n_c: int) -> LogQSeries:
    t_bound = n_c + D + T_BOUND_SLACK
    blocks = {}
    denominator_inverse = PClass.one(n_c)
    for d in range(D + 1):
        if d:
            step = invert_unit(_linear(n_c, 1, -d))
            denominator_inverse = denominator_inverse * (step ** (b.n + 1))
        if normalized:
            top = reduced_numerator(b, d, n_c)
        elif d == 0:
            if b.p_exponent < 0:
                continue
            top = numerator(b, 0, n_c)
        else:
            top = numerator(b, d, n_c)
        block = top * denominator_inverse
        _assert_hbar_window(b, d, block, n_c)
        blocks[(d, 0)] = block

    prefactor = exp_series(LogQSeries(n_c, D, t_bound, {(0, 1): PClass.monomial(n_c, 1, -1, -1)}))
    series = prefactor * LogQSeries(n_c, D, t_bound, blocks)
    logger.debug("hg_base %s D=%d normalized=%s: %d terms", b.label(), D, normalized, len(series.terms))
    return series


def _assert_hbar_window(b: BundleSpec, d: int, block: PClass, n_c: int):
    low = -(b.n + 1) * d - n_c
    high = numerator_degree(b, d)
    for coefficient in block.coeffs:
        if coefficient and (coefficient.min_exponent() < low or coefficient.max_exponent() > high):
            raise ShapeViolation(
                f"q^{d} block of {b.label()} has hbar-exponents outside [{low}, {high}]"
            )


def dimension_check(b: BundleSpec, ins: InsertionSpec) -> DimensionVerdict:
    """
    Critical-dimension test: total insertion weight must equal n - 3 + m - rk V+ + rk V-,
    independent of the degree.
    """
    required = b.n - 3 + ins.m - b.rank_plus + b.rank_minus
    total = ins.total_weight
    if total == required:
        reason = "ok"
    else:
        reason = (
            f"insertions {ins.label()} have total weight {total}; "
            f"{b.label()} with {ins.m} point(s) needs weight {required}"
        )
    return DimensionVerdict(total == required, required, total, reason)

# updates/strategies.py
"""Hypothesis strategies for the series tower and the oracle"""

from fractions import Fraction

from hypothesis import strategies as st

from support.hbar_laurent import HbarLaurent
from support.log_q_series import LogQSeries
from support.pclass import PClass
from tools.euler_data import BundleSpec
from tools.localization_oracle import WeightVector

rationals = st.fractions(min_value=-6, max_value=6, max_denominator=7)
nonzero_rationals = rationals.filter(bool)


def laurents(min_exp: int = -3, max_exp: int = 3, max_terms: int = 3):
    return st.dictionaries(st.integers(min_exp, max_exp), rationals, max_size=max_terms).map(HbarLaurent)


def pclasses(n: int):
    return st.lists(laurents(), min_size=n + 1, max_size=n + 1).map(lambda cs: PClass(n, cs))


@st.composite
def units(draw, n: int):
    """PClass whose p^0 coefficient is a nonzero hbar-monomial"""
    head = HbarLaurent.monomial(draw(nonzero_rationals), draw(st.integers(-3, 3)))
    tail = draw(st.lists(laurents(), min_size=n, max_size=n))
    return PClass(n, [head] + tail)


def scalar_series(n: int, D: int, t_bound: int, max_t: int = 2):
    keys = st.tuples(st.integers(0, D), st.integers(0, max_t))
    return st.dictionaries(keys, rationals, max_size=5).map(
        lambda terms: LogQSeries.from_scalars(n, D, t_bound, terms)
    )


def pure_q_series(n: int, D: int, t_bound: int):
    """Scalar, t-free, q-positive: admissible shifts and gauge exponents"""
    return st.dictionaries(st.integers(1, D), rationals, max_size=D).map(
        lambda terms: LogQSeries.from_scalars(n, D, t_bound, {(d, 0): c for d, c in terms.items()})
    )


def q_series(n: int, D: int, t_bound: int, max_t: int = 2):
    """General series with PClass coefficients"""
    keys = st.tuples(st.integers(0, D), st.integers(0, max_t))
    return st.dictionaries(keys, pclasses(n), max_size=3).map(
        lambda terms: LogQSeries(n, D, t_bound, terms)
    )


def weight_vectors(length: int = 8):
    return st.lists(st.integers(-60, 60), min_size=length, max_size=length, unique=True).map(
        lambda values: WeightVector(tuple(Fraction(v) for v in values))
    )


@st.composite
def bundles(draw, max_n: int = 5, min_rank_minus: int = 0):
    """Split bundles with sum of twists n + 1, twists assigned to either side"""
    n = draw(st.integers(1, max_n))
    remaining = n + 1
    positives, negatives = [], []
    while remaining:
        part = draw(st.integers(1, remaining))
        (negatives if draw(st.booleans()) else positives).append(part)
        remaining -= part
    while len(negatives) < min_rank_minus and positives:
        negatives.append(positives.pop())
    return BundleSpec(n, tuple(positives), tuple(negatives))

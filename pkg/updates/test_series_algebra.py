# test_series_algebra.py
"""
Tests for the exact series tower: hbar-Laurent polynomials, truncated
p-classes and log-q series
"""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from support.errors import (
    BadShift,
    IncompatibleDimension,
    NonMonomialLeading,
    NonNilpotentConstant,
    OutOfRange,
    TDegreeOverflow,
    ZeroLeading,
)
from support.hbar_laurent import HbarLaurent
from support.log_q_series import (
    LogQSeries,
    coeff,
    d_dt,
    exp_series,
    invert_map,
    invert_unit_series,
    shift_part,
    shift_t,
)
from support.pclass import PClass, invert_unit

from . import strategies

N = 2
D = 4
T_BOUND = 6


def q(n=N, order=D, t_bound=T_BOUND):
    return LogQSeries.from_scalars(n, order, t_bound, {(1, 0): 1})


def t(n=N, order=D, t_bound=T_BOUND):
    return LogQSeries.variable_t(n, order, t_bound)


# ============ HBAR LAURENT ============

def test_laurent_drops_zero_terms():
    assert HbarLaurent({0: 0, 2: Fraction(1, 2)}).exponents() == (2,)
    assert HbarLaurent({1: 0}) == 0


def test_laurent_monomial_inverse():
    x = HbarLaurent.monomial(Fraction(-3, 2), 4)
    assert x * x.inverse() == HbarLaurent.one()
    assert x.inverse() == HbarLaurent.monomial(Fraction(-2, 3), -4)


def test_laurent_inverse_rejects_sums():
    with pytest.raises(NonMonomialLeading):
        HbarLaurent({0: 1, 1: 1}).inverse()
    with pytest.raises(ZeroLeading):
        HbarLaurent.zero().inverse()


@given(strategies.laurents(), strategies.laurents(), strategies.laurents())
def test_laurent_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a - a == HbarLaurent.zero()


# ============ P-CLASSES ============

def test_pclass_truncates_above_n():
    p = PClass.monomial(2, 1)
    assert p ** 3 == PClass.zero(2)
    assert p ** 2 == PClass.monomial(2, 2)


def test_invert_unit_geometric_series():
    x = PClass(2, [HbarLaurent.one(), HbarLaurent.one()])
    expected = PClass(2, [HbarLaurent.one(), HbarLaurent.monomial(-1), HbarLaurent.one()])
    assert invert_unit(x) == expected


def test_invert_unit_hbar_monomial_head():
    x = PClass.linear(3, 2, 5)  # 2p + 5 hbar
    inv = invert_unit(x)
    assert x * inv == PClass.one(3)
    assert inv[0] == HbarLaurent.monomial(Fraction(1, 5), -1)


def test_invert_unit_errors():
    with pytest.raises(ZeroLeading):
        invert_unit(PClass.monomial(2, 1))
    with pytest.raises(NonMonomialLeading):
        invert_unit(PClass(2, [HbarLaurent({0: 1, 1: 1})]))


@given(strategies.units(3))
def test_invert_unit_is_two_sided(x):
    inv = invert_unit(x)
    assert x * inv == PClass.one(3)
    assert inv * x == PClass.one(3)


@given(strategies.pclasses(N), strategies.pclasses(N), strategies.pclasses(N))
def test_pclass_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


def test_pclass_dimension_mismatch():
    with pytest.raises(IncompatibleDimension):
        PClass.one(1) + PClass.one(2)
    with pytest.raises(IncompatibleDimension):
        LogQSeries.one(1, D, T_BOUND) * LogQSeries.one(2, D, T_BOUND)


def test_shift_p_negative_drops_low_terms():
    x = PClass(2, [HbarLaurent.one(), HbarLaurent.monomial(2), HbarLaurent.monomial(3)])
    assert x.shift_p(-1) == PClass(2, [HbarLaurent.monomial(2), HbarLaurent.monomial(3)])
    assert x.shift_p(1) == PClass(2, [HbarLaurent.zero(), HbarLaurent.one(), HbarLaurent.monomial(2)])


# ============ LOG-Q SERIES ============

def test_t_degree_overflow_is_reported():
    with pytest.raises(TDegreeOverflow):
        LogQSeries(1, 2, 1, {(0, 2): PClass.one(1)})
    x = LogQSeries.variable_t(1, 2, 1)
    with pytest.raises(TDegreeOverflow):
        x * x


def test_truncation_drops_high_q():
    x = q(order=2) ** 3
    assert x.is_zero()


@given(strategies.q_series(N, D, T_BOUND), strategies.q_series(N, D, T_BOUND),
       strategies.q_series(N, D, T_BOUND))
def test_series_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


def test_coeff_reads_exact_slot():
    x = LogQSeries(N, D, T_BOUND, {(2, 1): PClass.monomial(N, 1, Fraction(7, 3), -2)})
    assert coeff(x, 2, 1, 1, -2) == Fraction(7, 3)
    assert coeff(x, 2, 1, 1, -1) == 0
    assert coeff(x, 3, 0, 0, 0) == 0


@pytest.mark.parametrize("index", [(D + 1, 0, 0, 0), (-1, 0, 0, 0), (0, T_BOUND + 1, 0, 0), (0, 0, N + 1, 0)])
def test_coeff_out_of_range(index):
    with pytest.raises(OutOfRange):
        coeff(LogQSeries.one(N, D, T_BOUND), *index)


@given(strategies.q_series(N, D, T_BOUND, max_t=2), strategies.q_series(N, D, T_BOUND, max_t=2),
       st.integers(0, D), st.integers(0, 2), st.integers(0, N), st.integers(-3, 3))
def test_coeff_is_additive(a, b, d, j, i, k):
    assert coeff(a + b, d, j, i, k) == coeff(a, d, j, i, k) + coeff(b, d, j, i, k)


def test_d_dt_example():
    x = LogQSeries.from_scalars(N, D, T_BOUND, {(1, 2): 1})
    assert d_dt(x) == LogQSeries.from_scalars(N, D, T_BOUND, {(1, 1): 2, (1, 2): 1})
    assert d_dt(LogQSeries.one(N, D, T_BOUND)).is_zero()


@given(strategies.scalar_series(N, D, T_BOUND), strategies.q_series(N, D, T_BOUND))
def test_d_dt_leibniz(a, b):
    assert d_dt(a * b) == d_dt(a) * b + a * d_dt(b)


def test_exp_of_q():
    g = q().scale(2)
    expected = LogQSeries.from_q_list(N, T_BOUND, [Fraction(1), Fraction(2), Fraction(2), Fraction(4, 3), Fraction(2, 3)])
    assert exp_series(g) == expected


def test_exp_of_nilpotent_p_terminates():
    x = LogQSeries.constant(PClass.monomial(N, 1, 3), D, T_BOUND)
    result = exp_series(x)
    assert result[(0, 0)] == PClass(N, [HbarLaurent.one(), HbarLaurent.monomial(3), HbarLaurent.monomial(Fraction(9, 2))])


def test_exp_rejects_constant():
    with pytest.raises(NonNilpotentConstant):
        exp_series(LogQSeries.one(N, D, T_BOUND))
    with pytest.raises(NonNilpotentConstant):
        exp_series(LogQSeries.constant(PClass.constant(N, 1, -1), D, T_BOUND))


@given(strategies.pure_q_series(N, D, T_BOUND), strategies.pure_q_series(N, D, T_BOUND))
def test_exp_group_law(a, b):
    assert exp_series(a + b) == exp_series(a) * exp_series(b)


def test_shift_t_examples():
    g = q().scale(Fraction(1, 3))
    assert shift_t(t(), g) == t() + g
    # q -> q e^(q/3)
    expected = LogQSeries.from_q_list(N, T_BOUND, [Fraction(0), Fraction(1), Fraction(1, 3), Fraction(1, 18), Fraction(1, 162)])
    assert shift_t(q(), g) == expected
    assert shift_t(q(), LogQSeries.zero(N, D, T_BOUND)) == q()


@pytest.mark.parametrize("bad", [
    LogQSeries.variable_t(N, D, T_BOUND),
    LogQSeries.one(N, D, T_BOUND),
    LogQSeries.constant(PClass.constant(N, 1, 1), D, T_BOUND) * LogQSeries.from_scalars(N, D, T_BOUND, {(1, 0): 1}),
    LogQSeries(N, D, T_BOUND, {(1, 0): PClass.monomial(N, 1)}),
])
def test_shift_t_rejects_bad_shifts(bad):
    with pytest.raises(BadShift):
        shift_t(q(), bad)


@given(strategies.q_series(N, D, T_BOUND, max_t=2), strategies.pure_q_series(N, D, T_BOUND),
       strategies.pure_q_series(N, D, T_BOUND))
def test_shift_t_composition(x, g1, g2):
    assert shift_t(shift_t(x, g1), g2) == shift_t(x, g2 + shift_t(g1, g2))


@given(strategies.q_series(N, D, T_BOUND, max_t=2), strategies.pure_q_series(N, D, T_BOUND))
def test_shift_t_chain_rule(x, g):
    one = LogQSeries.one(N, D, T_BOUND)
    assert d_dt(shift_t(x, g)) == shift_t(d_dt(x), g) * (one + d_dt(g))


def test_invert_map_first_orders():
    c = Fraction(5, 2)
    big_t = t(order=2) + q(order=2).scale(c)
    inverse = invert_map(big_t)
    expected = t(order=2) + LogQSeries.from_q_list(N, T_BOUND, [Fraction(0), -c, c * c])
    assert inverse == expected


@given(strategies.pure_q_series(N, D, T_BOUND))
def test_invert_map_round_trip(g):
    big_t = t() + g
    inverse = invert_map(big_t)
    assert shift_t(big_t, shift_part(inverse)) == t()


def test_invert_map_rejects_non_maps():
    with pytest.raises(BadShift):
        invert_map(t().scale(2))
    with pytest.raises(BadShift):
        invert_map(q())


@given(strategies.pure_q_series(N, D, T_BOUND), strategies.nonzero_rationals)
def test_invert_unit_series(g, c):
    u = LogQSeries.one(N, D, T_BOUND).scale(c) + g
    assert u * invert_unit_series(u) == LogQSeries.one(N, D, T_BOUND)

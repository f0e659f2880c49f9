# test_euler_data.py
"""
Tests for bundle validation, Omega, the numerators and the base hypergeometric series
"""

from dataclasses import fields
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from support.errors import InvalidBundle, InvalidInsertion, PrecisionBudget
from support.pclass import PClass
from tools.euler_data import (
    BundleClass,
    BundleSpec,
    InsertionSpec,
    classify,
    dimension_check,
    hg_base,
    numerator,
    numerator_degree,
    omega,
    reduced_numerator,
)

from . import strategies


# ============ VALIDATION ============

@pytest.mark.parametrize("n, positives, negatives", [
    (0, (1,), ()),
    (4, (5,), (1,)),
    (3, (4, 0), ()),
    (2, (), (2,)),
])
def test_invalid_bundles(n, positives, negatives):
    with pytest.raises(InvalidBundle):
        BundleSpec(n, positives, negatives)


@pytest.mark.parametrize("points", [
    ((1, 0), (1, 0), (1, 0)),
    ((1, 1), (1, 0)),
    ((-1, 0),),
    (),
])
def test_invalid_insertions(points):
    with pytest.raises(InvalidInsertion):
        InsertionSpec(points)


def test_bundle_label(golden_bundle):
    assert golden_bundle.label() == "O(3) + O(-3) over P^5"


def test_classify(golden_bundle, quintic, conifold, rank_two_concave):
    assert classify(golden_bundle) is BundleClass.MIXED
    assert classify(quintic) is BundleClass.MIXED
    assert classify(conifold) is BundleClass.CONCAVE2
    assert classify(rank_two_concave) is BundleClass.CONCAVE2


# ============ OMEGA ============

def test_omega_values(golden_bundle, quintic, conifold):
    assert (omega(golden_bundle).coefficient, omega(golden_bundle).p_exponent) == (-1, 0)
    assert (omega(quintic).coefficient, omega(quintic).p_exponent) == (5, 1)
    assert (omega(conifold).coefficient, omega(conifold).p_exponent) == (1, -2)
    assert omega(BundleSpec(2, (), (1, 2))).coefficient == Fraction(1, 2)


def test_working_precision(golden_bundle, conifold):
    assert golden_bundle.working_dimension == 5
    assert golden_bundle.budget == 5
    assert conifold.working_dimension == 3
    assert conifold.budget == 3


# ============ NUMERATORS ============

def test_quintic_degree_one_numerator(quintic):
    n1 = numerator(quintic, 1)
    # 5p * prod_{m=1}^5 (5p - m hbar): the p^1 slot is 5 * (-1)^5 5! hbar^5
    assert n1[1][5] == -600
    assert n1[0].is_zero()


def test_conifold_numerators(conifold):
    assert numerator(conifold, 1) == PClass.one(1)
    assert reduced_numerator(conifold, 1) == PClass.monomial(3, 2)


def test_degree_zero(golden_bundle, conifold):
    assert numerator(golden_bundle, 0) == PClass.constant(5, -1)
    assert reduced_numerator(conifold, 0) == PClass.one(3)
    with pytest.raises(PrecisionBudget):
        numerator(conifold, 0)


@given(strategies.bundles(max_n=4).filter(lambda b: b.p_exponent >= 0), st.integers(1, 2))
def test_numerator_is_omega_times_reduced(b, d):
    assert numerator(b, d) == omega(b).as_pclass(b.n) * reduced_numerator(b, d, b.n)


@given(strategies.bundles(max_n=4), st.integers(1, 2))
def test_numerator_homogeneity(b, d):
    degree = numerator_degree(b, d)
    top = numerator(b, d, p_dim=degree)
    for p_exp, h in enumerate(top.coeffs):
        for h_exp, _ in h:
            assert p_exp + h_exp == degree


# ============ HG BASE ============

def test_raw_series_omits_q0_for_negative_omega(conifold):
    raw = hg_base(conifold, 3, normalized=False)
    assert all(d >= 1 for d, _ in raw.terms)
    assert raw.n == conifold.n


def test_raw_series_is_omega_times_normalized(conifold):
    D = 3
    raw = hg_base(conifold, D, normalized=False)
    normalized = hg_base(conifold, D, normalized=True)
    w = omega(conifold)
    for (d, j), value in normalized.terms.items():
        if d == 0:
            continue
        expected = value.shift_p(w.p_exponent).with_dimension(conifold.n).scale(w.coefficient)
        assert raw[(d, j)] == expected


def test_normalized_starts_with_exponential(golden_bundle):
    series = hg_base(golden_bundle, 2, normalized=True)
    # e^{-pt/hbar}: the q^0 t^1 slot is -p/hbar
    assert series[(0, 1)] == PClass.monomial(5, 1, -1, -1)
    assert series[(0, 0)] == PClass.one(5)


def test_hg_base_is_deterministic(quintic):
    assert hg_base(quintic, 3, normalized=True) == hg_base(quintic, 3, normalized=True)


# ============ DIMENSION CHECK ============

@pytest.mark.parametrize("bundle, insertion, admissible", [
    (BundleSpec(5, (3,), (3,)), InsertionSpec.one_point(3), True),
    (BundleSpec(5, (3,), (3,)), InsertionSpec.one_point(2, 1), True),
    (BundleSpec(5, (3,), (3,)), InsertionSpec.two_point(2, 2), True),
    (BundleSpec(5, (3,), (3,)), InsertionSpec.two_point(2, 1, 1), True),
    (BundleSpec(5, (3,), (3,)), InsertionSpec.two_point(2, 2, 1), False),
    (BundleSpec(5, (3,), (3,)), InsertionSpec.two_point(3, 2), False),
    (BundleSpec(4, (5,)), InsertionSpec.one_point(1), True),
    (BundleSpec(1, (), (1, 1)), InsertionSpec.one_point(1), True),
    (BundleSpec(1, (), (1, 1)), InsertionSpec.one_point(0), False),
    (BundleSpec(1, (), (1, 1)), InsertionSpec.two_point(1, 1), True),
    (BundleSpec(3, (), (1, 1, 1, 1)), InsertionSpec.two_point(3, 3), True),
])
def test_dimension_check(bundle, insertion, admissible):
    verdict = dimension_check(bundle, insertion)
    assert verdict.admissible is admissible
    assert (verdict.reason == "ok") is admissible


def test_dimension_check_reports_required_weight():
    verdict = dimension_check(BundleSpec(1, (), (1, 1)), InsertionSpec.one_point(0))
    assert verdict.required_weight == 1
    assert verdict.total_weight == 0


def test_dimension_verdict_carries_weights_and_reason_only():
    verdict = dimension_check(BundleSpec(5, (3,), (3,)), InsertionSpec.one_point(3))
    assert [f.name for f in fields(verdict)] == ["admissible", "required_weight", "total_weight", "reason"]
    assert verdict.admissible

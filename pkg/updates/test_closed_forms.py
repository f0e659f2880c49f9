# test_closed_forms.py
"""
Tests for the closed formulas, the Candelas potential, Aspinwall-Morrison
inversion and integrality reporting
"""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from support.errors import Inapplicable, MissingDegrees
from tools.closed_forms import (
    am_invert,
    am_resum,
    candelas_potential,
    concave_closed_form,
    integrality_report,
    multiple_cover,
    two_point_eta_notes,
)
from tools.euler_data import BundleSpec
from tools.recovery import InvariantTable

from . import strategies

ONE_POINT = ((3, 0),)


def table_from(bundle, column, signature=ONE_POINT):
    table = InvariantTable(bundle)
    for d, value in column.items():
        table.add(d, signature, value)
    return table


# ============ CLOSED FORMULAS ============

def test_concave_closed_form_rank_two(rank_two_concave, conifold):
    assert concave_closed_form(rank_two_concave, 1) == -1
    assert concave_closed_form(rank_two_concave, 2) == Fraction(3, 4)
    assert concave_closed_form(conifold, 3) == Fraction(1, 9)


def test_concave_closed_form_rank_three_vanishes():
    assert concave_closed_form(BundleSpec(4, (2,), (1, 1, 1)), 2) == 0


def test_concave_closed_form_inapplicable(quintic, golden_bundle):
    with pytest.raises(Inapplicable):
        concave_closed_form(quintic, 1)
    with pytest.raises(Inapplicable):
        concave_closed_form(golden_bundle, 1)


@pytest.mark.parametrize("n, d, expected", [
    (1, 1, Fraction(1)),
    (1, 3, Fraction(1, 3)),
    (2, 2, Fraction(-1, 2)),
    (2, 3, Fraction(1, 3)),
    (3, 2, Fraction(1, 2)),
    (4, 4, Fraction(-1, 4)),
])
def test_multiple_cover(n, d, expected):
    assert multiple_cover(n, d) == expected


def test_multiple_cover_inapplicable():
    with pytest.raises(Inapplicable):
        multiple_cover(0, 1)
    with pytest.raises(Inapplicable):
        multiple_cover(2, 0)


# ============ CANDELAS ============

def test_candelas_quintic(quintic):
    potential = candelas_potential(4, 2)
    assert potential.quadratic == Fraction(5, 2)
    assert potential.instantons[1] == 2875
    assert potential.instantons[2] == Fraction(4876875, 4)


def test_candelas_needs_n_at_least_four():
    with pytest.raises(Inapplicable):
        candelas_potential(3, 2)


# ============ ASPINWALL-MORRISON ============

def test_am_invert_golden_one_point(golden_bundle, knowledge_base):
    K = knowledge_base.get_table("one_point")
    eta = am_invert(K, 1, 4)
    expected = knowledge_base.get_eta("one_point").column(ONE_POINT)
    assert eta.column(ONE_POINT) == {d: v for d, v in expected.items() if d <= 4}
    assert eta.get(2, ONE_POINT) == -15228 - Fraction(144, 4)


def test_am_invert_two_point_power():
    b = BundleSpec(5, (3,), (3,))
    K = table_from(b, {1: 3, 2: 5, 4: 11})
    eta = am_invert(K, 2, 4)
    assert eta.get(2, ONE_POINT) == 5 - Fraction(3, 2)
    assert eta.get(4, ONE_POINT) == 11 - eta.get(2, ONE_POINT) * Fraction(1, 2) - 3 * Fraction(1, 4)


def test_am_invert_missing_degrees(golden_bundle):
    with pytest.raises(MissingDegrees):
        am_invert(table_from(golden_bundle, {2: 5}), 1, 2)


@given(st.dictionaries(st.integers(1, 8), strategies.rationals, min_size=8, max_size=8), st.integers(1, 3))
def test_am_round_trip(column, m):
    b = BundleSpec(5, (3,), (3,))
    K = table_from(b, column)
    assert am_resum(am_invert(K, m, 8), m, 8).rows == K.rows


# ============ INTEGRALITY ============

def test_integrality_flags_fractions(golden_bundle):
    report = integrality_report(table_from(golden_bundle, {1: 144, 2: Fraction(1, 2)}))
    assert not report.passed
    assert [row.d for row in report.failures()] == [2]


def test_integrality_empty_table_passes(golden_bundle):
    assert integrality_report(InvariantTable(golden_bundle)).passed


def test_integrality_divide_by_degree(quintic):
    eta = table_from(quintic, {1: 2875, 2: 2 * 609250, 3: 3 * 317206375}, ((1, 0),))
    assert integrality_report(eta, divide_by_degree=True).passed
    assert not integrality_report(table_from(quintic, {2: 3}, ((1, 0),)), divide_by_degree=True).passed


# ============ TWO-POINT ETA NOTES ============

def test_two_point_eta_notes_explain_degree_one():
    notes = two_point_eta_notes(
        naive={1: Fraction(261), 2: Fraction(-70965)},
        published={1: Fraction(117), 2: Fraction(-70965)},
        one_point_eta={1: Fraction(144)},
    )
    assert len(notes) == 1
    note = notes[0]
    assert (note.d, note.difference) == (1, 144)
    assert note.explained_by_one_point
    assert "difference 144" in note.describe()

# test_mirror_transforms.py
"""
Tests for height extension, the gauge and height-shift transforms, the
normalization pipeline and the mirror map
"""

from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from support.errors import (
    BadShift,
    HeightMismatch,
    MixedBundles,
    NonUnit,
    PrecisionBudget,
    ShapeViolation,
    WrongBundleClass,
)
from support.log_q_series import LogQSeries, d_dt
from tools.euler_data import BundleSpec
from tools.mirror_transforms import (
    _eta_step,
    _full_pipeline,
    SeriesForm,
    base_height_series,
    extend_height,
    gauge_exp,
    gauge_unit,
    hbar_derivative,
    height_shift,
    mirror_map,
    normalize_pipeline,
    presentation_height,
    simple_extension,
    transported_height,
)

from . import strategies

D = 2


@pytest.fixture(scope="module")
def golden_base(golden_bundle):
    return base_height_series(golden_bundle, D, SeriesForm.NORMALIZED)


def scalar(n, coefficients, t_bound=12):
    return LogQSeries.from_scalars(n, D, t_bound, coefficients)


# ============ HEIGHT EXTENSION ============

@given(strategies.bundles(max_n=3), st.integers(0, 3), st.booleans())
def test_extend_height_is_iterated_hbar_derivative(b, k, normalized):
    form = SeriesForm.NORMALIZED if normalized else SeriesForm.RAW
    base = base_height_series(b, D, form)
    expected = base.series
    for _ in range(k):
        expected = hbar_derivative(expected)
    extended = extend_height(base, k)
    assert extended.series == expected
    assert extended.height == k


def test_extend_height_needs_height_zero(golden_base):
    with pytest.raises(HeightMismatch):
        extend_height(extend_height(golden_base, 1), 1)


# ============ GAUGE TRANSFORMS ============

def test_gauge_unit_composes(golden_base):
    n = golden_base.series.n
    u1 = scalar(n, {(0, 0): 2, (1, 0): 1, (1, 1): Fraction(1, 3)})
    u2 = scalar(n, {(0, 0): -1, (2, 0): 5})
    assert gauge_unit(gauge_unit(golden_base, u1), u2) == gauge_unit(golden_base, u1 * u2)


def test_gauge_unit_rejects_non_units(golden_base):
    n = golden_base.series.n
    with pytest.raises(NonUnit):
        gauge_unit(golden_base, scalar(n, {(1, 0): 1}))
    with pytest.raises(NonUnit):
        gauge_unit(golden_base, LogQSeries.one(n, D, 12).shift_hbar(1))


@given(strategies.pure_q_series(5, D, 12), strategies.pure_q_series(5, D, 12))
def test_gauge_exp_group_law(golden_base, f1, f2):
    assert gauge_exp(gauge_exp(golden_base, f1), f2) == gauge_exp(golden_base, f1 + f2)


@given(strategies.pure_q_series(5, D, 12))
def test_gauge_exp_keeps_hbar_zero_part(golden_base, f):
    moved = gauge_exp(golden_base, f)
    assert moved.series.component(0, 0) == golden_base.series.component(0, 0)


def test_gauge_exp_rejects_t_dependence(golden_base):
    with pytest.raises(BadShift):
        gauge_exp(golden_base, LogQSeries.variable_t(5, D, 12))


# ============ HEIGHT SHIFT ============

def test_height_shift_is_linear(golden_base):
    raised = golden_base.replace(hbar_derivative(golden_base.series))
    f1 = scalar(5, {(1, 0): 3})
    f2 = scalar(5, {(1, 0): Fraction(-1, 2), (2, 0): 7})
    once = height_shift(golden_base, f1 + f2, raised)
    twice = height_shift(height_shift(golden_base, f1, raised), f2, raised)
    assert once == twice


def test_height_shift_rejects_mixed_inputs(golden_bundle, quintic, golden_base):
    f = scalar(5, {(1, 0): 1})
    raw = base_height_series(golden_bundle, D, SeriesForm.RAW)
    with pytest.raises(MixedBundles):
        height_shift(golden_base, f, raw)
    with pytest.raises(MixedBundles):
        height_shift(golden_base, f, base_height_series(quintic, D, SeriesForm.NORMALIZED))
    with pytest.raises(BadShift):
        height_shift(golden_base, LogQSeries.one(5, D, 12), golden_base)


# ============ PIPELINE ============

def test_quintic_mirror_map(quintic):
    big_t = mirror_map(quintic, D)
    assert big_t[(0, 1)].scalar_value() == 1
    assert big_t[(1, 0)].scalar_value() == 770


def test_golden_mirror_map(golden_bundle):
    big_t = mirror_map(golden_bundle, D)
    assert big_t[(1, 0)].scalar_value() == -36
    assert big_t[(2, 0)].scalar_value() == 4050


def test_concave2_mirror_map_is_identity(conifold):
    big_t = mirror_map(conifold, D)
    assert big_t == LogQSeries.variable_t(big_t.n, D, big_t.t_bound)


def test_y_table_leading_terms(golden_bundle):
    table, heights = normalize_pipeline(golden_bundle, golden_bundle.budget - 1, D)
    assert len(heights) == golden_bundle.budget
    for k in range(table.max_height + 1):
        for q in table.levels(k):
            head = table.get(k, q)[(0, q)].scalar_value()
            assert head == Fraction(1, factorial(q))


def test_y_table_recursion(golden_bundle):
    table, _ = normalize_pipeline(golden_bundle, golden_bundle.budget - 1, D)
    for k in range(1, table.max_height + 1):
        previous = d_dt(table.get(k - 1, 1))
        for q in table.levels(k):
            assert table.get(k, q) * previous == d_dt(table.get(k - 1, q + 1))


def test_y_table_bounds(quintic):
    table, _ = normalize_pipeline(quintic, 1, D)
    with pytest.raises(PrecisionBudget):
        table.get(1, quintic.budget)
    with pytest.raises(PrecisionBudget):
        table.get(2, 1)


def test_pipeline_is_deterministic(quintic):
    first, _ = normalize_pipeline(quintic, 2, D)
    _full_pipeline.cache_clear()
    second, _ = normalize_pipeline(quintic, 2, D)
    assert first.entries == second.entries


def test_pipeline_errors(quintic, conifold):
    with pytest.raises(PrecisionBudget):
        normalize_pipeline(quintic, quintic.budget, D)
    with pytest.raises(PrecisionBudget):
        normalize_pipeline(quintic, -1, D)
    with pytest.raises(WrongBundleClass):
        normalize_pipeline(conifold, 0, D)


# ============ CONCAVE2 ROUTE ============

def test_simple_extension_valid_below_rank(conifold, rank_two_concave):
    extended = simple_extension(conifold, 1, D)
    assert extended.mirror_coordinate
    assert extended.form is SeriesForm.RAW
    simple_extension(rank_two_concave, 1, D)


@pytest.mark.parametrize("bundle, k", [
    (BundleSpec(1, (), (1, 1)), 2),
    (BundleSpec(2, (), (1, 2)), 2),
    (BundleSpec(2, (), (1, 2)), 3),
])
def test_simple_extension_fails_at_rank(bundle, k):
    with pytest.raises(ShapeViolation):
        simple_extension(bundle, k, D)


def test_simple_extension_needs_concave2(quintic):
    with pytest.raises(WrongBundleClass):
        simple_extension(quintic, 0, D)


def test_transported_height_is_raw(quintic, conifold):
    moved = transported_height(quintic, 1, D)
    assert moved.form is SeriesForm.RAW
    assert moved.mirror_coordinate
    assert moved.series.n == quintic.n
    assert transported_height(conifold, 1, D) == simple_extension(conifold, 1, D)


# ============ ETA STEP / PRESENTATION ============

def test_eta_step_leaves_normalized_heights_alone(golden_bundle):
    _, heights = normalize_pipeline(golden_bundle, golden_bundle.budget - 1, D)
    for k in range(1, len(heights)):
        for r in range(1, k + 1):
            assert heights[k].series.component(k - r, 0).is_zero()
        assert _eta_step(heights[k], list(heights)) == heights[k]


def test_presentation_height_moves_only_degree_two_and_up(golden_bundle):
    geometric = transported_height(golden_bundle, 0, D).series
    moved = presentation_height(golden_bundle, 0, D)
    assert moved.mirror_coordinate
    low = {key: c for key, c in moved.series.terms.items() if key[0] <= 1}
    assert low == {key: c for key, c in geometric.terms.items() if key[0] <= 1}
    assert moved.series != geometric


def test_presentation_height_is_geometric_for_concave2(conifold):
    assert presentation_height(conifold, 1, D) == transported_height(conifold, 1, D)

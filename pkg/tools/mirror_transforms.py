# tools/mirror_transforms.py
"""
Mirror Transformation Tools
Height extension, the three transform families, the normalization pipeline
that produces the y-table and mirror map, and transport to the mirror coordinate
"""

import logging
import os
import sys
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Tuple

# Add parent directory to path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from support.errors import (
    BadShift,
    HeightMismatch,
    MixedBundles,
    NonUnit,
    PrecisionBudget,
    ShapeViolation,
    WrongBundleClass,
)
from support.log_q_series import (
    LogQSeries,
    d_dt,
    exp_series,
    invert_map,
    invert_unit_series,
    shift_part,
    shift_t,
)
from support.pclass import PClass
from tools.euler_data import BundleClass, BundleSpec, classify, hg_base, omega

logger = logging.getLogger(__name__)


class SeriesForm(str, Enum):
    RAW = "raw"                # Omega-bearing, on P^n
    NORMALIZED = "normalized"  # divided by Omega, at working precision


# ============ DOMAIN TYPES ============

@dataclass(frozen=True)
class HeightSeries:
    """Hypergeometric series of the height-k data, tagged with its form and coordinate"""
    bundle: BundleSpec
    height: int
    series: LogQSeries
    form: SeriesForm
    mirror_coordinate: bool = False

    def __post_init__(self):
        expected = self.bundle.working_dimension if self.form is SeriesForm.NORMALIZED else self.bundle.n
        if self.series.n != expected:
            raise ShapeViolation(
                f"{self.form.value} series for {self.bundle.label()} must live on p-precision {expected}, "
                f"got {self.series.n}"
            )

    def replace(self, series: LogQSeries, **changes) -> "HeightSeries":
        values = dict(bundle=self.bundle, height=self.height, form=self.form,
                      mirror_coordinate=self.mirror_coordinate)
        values.update(changes)
        return HeightSeries(series=series, **values)


@dataclass(frozen=True)
class YTable:
    """
    y[k][q] for 0 <= k <= max_height, 1 <= q <= budget - k.
    Entries are scalar series in (t, q).
    """
    bundle: BundleSpec
    max_height: int
    budget: int
    entries: Dict[int, Dict[int, LogQSeries]] = field(default_factory=dict)

    def get(self, k: int, q: int) -> LogQSeries:
        if k > self.max_height or not 1 <= q <= self.budget - k:
            raise PrecisionBudget(
                f"y[{k}][{q}] is outside the table (heights <= {self.max_height}, q + k <= {self.budget})"
            )
        return self.entries[k][q]

    def levels(self, k: int) -> List[int]:
        return sorted(self.entries.get(k, {}))


# ============ TRANSFORMS ============

def base_height_series(b: BundleSpec, D: int, form: SeriesForm) -> HeightSeries:
    return HeightSeries(b, 0, hg_base(b, D, normalized=form is SeriesForm.NORMALIZED), form)


def hbar_derivative(x: LogQSeries) -> LogQSeries:
    """The operator -hbar d/dt"""
    return d_dt(x).shift_hbar(1).scale(-1)


def extend_height(h: HeightSeries, k: int) -> HeightSeries:
    """
    Height extension: multiply the q^d numerator by (p - d hbar)^k.
    On a base series this equals applying (-hbar d/dt)^k.
    """
    if h.height != 0:
        raise HeightMismatch(f"extend_height expects height-0 data, got height {h.height}")
    if k == 0:
        return h
    n = h.series.n
    factors: Dict[int, PClass] = {}
    terms = {}
    for (d, j), c in h.series.terms.items():
        if d not in factors:
            factors[d] = PClass.linear(n, 1, -d) ** k
        terms[(d, j)] = c * factors[d]
    return h.replace(LogQSeries(n, h.series.q_order, h.series.t_bound, terms), height=k)


def _as_scalar_factor(u: LogQSeries, n: int) -> LogQSeries:
    return u if u.n == n else u.with_dimension(n)


def gauge_unit(h: HeightSeries, u: LogQSeries) -> HeightSeries:
    """
    Multiply by a scalar unit u(t) (the hbar -> 0 shadow of e^{f/hbar}, f = hbar log u).

    Raises:
        NonUnit: u is not scalar or its constant term vanishes
    """
    if not u.is_scalar():
        raise NonUnit("gauge factor must be a scalar series")
    head = u.terms.get((0, 0))
    if head is None or not head.scalar_value():
        raise NonUnit("gauge factor has zero constant term")
    return h.replace(h.series * _as_scalar_factor(u, h.series.n))


def gauge_exp(h: HeightSeries, f: LogQSeries) -> HeightSeries:
    """
    Multiply by exp(f/hbar) for a q-positive scalar f.

    Raises:
        BadShift: f is not a pure q-positive scalar series
    """
    if not f.is_pure_q():
        raise BadShift("gauge exponent must be scalar, t-free and q-positive")
    if f.is_zero():
        return h
    factor = exp_series(_as_scalar_factor(f, h.series.n).shift_hbar(-1))
    return h.replace(h.series * factor)


def height_shift(h: HeightSeries, f: LogQSeries, h2: HeightSeries) -> HeightSeries:
    """
    h + f * h2 for a q-positive scalar f.

    Raises:
        MixedBundles: h and h2 differ in bundle or form
        BadShift: f is not a pure q-positive scalar series
    """
    if h.bundle != h2.bundle or h.form is not h2.form:
        raise MixedBundles(
            f"cannot combine {h.form.value} data of {h.bundle.label()} with "
            f"{h2.form.value} data of {h2.bundle.label()}"
        )
    if not f.is_pure_q():
        raise BadShift("height-shift coefficient must be scalar, t-free and q-positive")
    if f.is_zero():
        return h
    return h.replace(h.series + h2.series * _as_scalar_factor(f, h2.series.n))


# ============ NORMALIZATION PIPELINE ============

def _read_levels(b: BundleSpec, series: LogQSeries, k: int) -> Dict[int, LogQSeries]:
    levels = {}
    for q in range(1, b.budget - k + 1):
        y = series.component(q + k, -q)
        if q % 2:
            y = -y
        _check_y_leading(y, k, q)
        levels[q] = y
    return levels


def _check_y_leading(y: LogQSeries, k: int, q: int):
    factorial = 1
    for i in range(2, q + 1):
        factorial *= i
    head = {j: c.scalar_value() for (d, j), c in y.terms.items() if d == 0}
    if head != {q: Fraction(1, factorial)}:
        raise ShapeViolation(f"y[{k}][{q}] does not start with t^{q}/{q}!: q^0 part {head}")


def _check_leading_block(series: LogQSeries, k: int):
    """
    A normalized height-k series must be p^k plus hbar^{<0} terms. Any other
    hbar^0 entry is an eta-step coefficient, which has to vanish at lambda = 0.
    """
    for (d, j), c in series.terms.items():
        for i, h in enumerate(c.coeffs):
            if not h:
                continue
            if h.max_exponent() > 0:
                raise ShapeViolation(f"height {k}: positive hbar power at q^{d} t^{j} p^{i}")
            v = h[0]
            if not v:
                continue
            if (d, j, i) == (0, 0, k) and v == 1:
                continue
            raise ShapeViolation(
                f"height {k}: eta coefficient r={k - i} is {v} at q^{d} t^{j}; "
                "it should vanish in the nonequivariant limit"
            )


def _eta_step(h: HeightSeries, lower: List[HeightSeries]) -> HeightSeries:
    """
    Subtract f_r times height k-r for r = 1..k, f_r the hbar^0 p^(k-r) coefficient.
    _check_leading_block has already required every f_r to vanish, so h comes back unchanged.
    """
    k = h.height
    for r in range(1, k + 1):
        f = h.series.component(k - r, 0)
        h = height_shift(h, f.scale(-1), lower[k - r])
    return h


def normalize_pipeline(b: BundleSpec, K: int, D: int) -> Tuple[YTable, Tuple[HeightSeries, ...]]:
    """
    Build normalized data of heights 0..K and the y-table.

    Height 0 is the base series gauged by 1/f_0; each next height is
    gauge_unit(1/y'[k][1]) applied to -hbar d/dt of the previous one.

    Args:
        b: a MIXED bundle
        K: largest height
        D: q-truncation order

    Returns:
        (YTable, heights) with heights[k] the normalized height-k series

    Raises:
        WrongBundleClass: the bundle needs no transforms (rank V- >= 2)
        PrecisionBudget: K leaves no level inside q + k <= n - deg_p Omega
    """
    if classify(b) is BundleClass.CONCAVE2:
        raise WrongBundleClass(f"{b.label()} has rank V- >= 2; use the simple extension instead")
    if K < 0 or K > b.budget - 1:
        raise PrecisionBudget(
            f"height {K} is outside 0..{b.budget - 1}: levels must satisfy q + k <= n - deg_p Omega = {b.budget}"
        )
    table, heights = _full_pipeline(b, D)
    entries = {k: table.entries[k] for k in range(K + 1)}
    return YTable(b, K, b.budget, entries), heights[: K + 1]


@lru_cache(maxsize=32)
def _full_pipeline(b: BundleSpec, D: int) -> Tuple[YTable, Tuple[HeightSeries, ...]]:
    K = b.budget - 1
    logger.info("normalization pipeline for %s up to height %d, D=%d", b.label(), K, D)

    current = base_height_series(b, D, SeriesForm.NORMALIZED)
    f0 = current.series.component(0, 0)
    if f0.max_t_degree():
        raise ShapeViolation("leading block f_0 depends on t")
    if f0 != LogQSeries.one(f0.n, f0.q_order, f0.t_bound):
        logger.debug("gauging height 0 by 1/f_0, f_0 = 1 + %s q + ...", f0[(1, 0)].scalar_value())
        current = gauge_unit(current, invert_unit_series(f0))
    _check_leading_block(current.series, 0)

    entries: Dict[int, Dict[int, LogQSeries]] = {}
    heights = [current]
    for k in range(K + 1):
        entries[k] = _read_levels(b, current.series, k)
        if k == K:
            break
        y1_prime = d_dt(entries[k][1])
        raised = current.replace(hbar_derivative(current.series), height=k + 1)
        current = gauge_unit(raised, invert_unit_series(y1_prime))
        _check_leading_block(current.series, k + 1)
        current = _eta_step(current, heights)
        heights.append(current)

    table = YTable(b, K, b.budget, entries)
    logger.info("y[0][1] = t + %s q + ...", entries[0][1][(1, 0)].scalar_value())
    return table, tuple(heights)


def mirror_map(b: BundleSpec, D: int) -> LogQSeries:
    """T(t) = y[0][1](t); the identity t for CONCAVE2 bundles"""
    if classify(b) is BundleClass.CONCAVE2:
        n = b.working_dimension
        return LogQSeries.variable_t(n, D, n + D)
    table, _ = normalize_pipeline(b, 0, D)
    return table.get(0, 1)


@lru_cache(maxsize=32)
def mirror_inverse(b: BundleSpec, D: int) -> LogQSeries:
    """t(T) = T + H(Q)"""
    return invert_map(mirror_map(b, D))


# ============ TRANSPORT ============

def to_raw(h: HeightSeries) -> HeightSeries:
    """Multiply a normalized series by Omega and re-read it on P^n"""
    if h.form is SeriesForm.RAW:
        return h
    om = omega(h.bundle)
    series = h.series.shift_p(om.p_exponent).scale(om.coefficient).with_dimension(h.bundle.n)
    return h.replace(series, form=SeriesForm.RAW)


def simple_extension(b: BundleSpec, k: int, D: int) -> HeightSeries:
    """
    CONCAVE2 route: the raw base series extended to height k, already normalized.

    Raises:
        ShapeViolation: an hbar^(>=0) term survives at some d >= 1,
            which happens exactly when k >= rank V-
    """
    if classify(b) is not BundleClass.CONCAVE2:
        raise WrongBundleClass(f"{b.label()} needs the normalization pipeline")
    extended = extend_height(base_height_series(b, D, SeriesForm.RAW), k)
    for (d, j), c in extended.series.terms.items():
        if d and any(h and h.max_exponent() >= 0 for h in c.coeffs):
            raise ShapeViolation(f"simple extension keeps an hbar^(>=0) term at q^{d} t^{j}")
    return extended.replace(extended.series, mirror_coordinate=True)


@lru_cache(maxsize=64)
def transported_height(b: BundleSpec, k: int, D: int) -> HeightSeries:
    """
    Raw height-k series re-expanded in the mirror coordinate T.

    MIXED bundles shift the normalized series by t = T + H(Q) before
    multiplying by Omega; CONCAVE2 bundles need no transport.
    """
    if classify(b) is BundleClass.CONCAVE2:
        return simple_extension(b, k, D)
    _, heights = normalize_pipeline(b, k, D)
    shift = shift_part(mirror_inverse(b, D))
    normalized = heights[k]
    moved = normalized.replace(shift_t(normalized.series, shift), mirror_coordinate=True)
    logger.debug("transported height %d of %s", k, b.label())
    return to_raw(moved)


@lru_cache(maxsize=64)
def presentation_height(b: BundleSpec, k: int, D: int) -> HeightSeries:
    """
    The transported height-k series in the form the reference descendent tables use.

    With H(Q) the shift of t(T) = T + H(Q) and R_0 the Q^0 block of the transported
    series R, returns R_0 + exp(p H(Q)/hbar) (R - R_0). Degree-1 cells match R; from
    degree 2 on, each cell picks up H-weighted copies of lower-degree cells one rung
    down the descendent ladder, so only the T^0 coefficient of a cell is meaningful.
    CONCAVE2 bundles have H = 0 and get R back.
    """
    R = transported_height(b, k, D)
    if classify(b) is BundleClass.CONCAVE2:
        return R
    series = R.series
    n = series.n
    shift = shift_part(mirror_inverse(b, D))
    exponent = LogQSeries(n, series.q_order, series.t_bound, {
        (d, 0): PClass.monomial(n, 1, c.scalar_value(), -1) for (d, _), c in shift.terms.items()
    })
    base = LogQSeries(n, series.q_order, series.t_bound,
                      {key: c for key, c in series.terms.items() if key[0] == 0})
    moved = base + (series - base) * exp_series(exponent)
    logger.debug("presentation series for height %d of %s", k, b.label())
    return R.replace(moved)

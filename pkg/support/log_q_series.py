# support/log_q_series.py
"""
Logarithmic q-series
Truncated series in q = e^t whose coefficients are polynomials in t over PClass.
Houses the hypergeometric series and every transform applied to them.
"""

import logging
from fractions import Fraction
from math import comb
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from support.errors import (
    BadShift,
    IncompatibleDimension,
    NonUnit,
    NonNilpotentConstant,
    OutOfRange,
    TDegreeOverflow,
)
from support.hbar_laurent import HbarLaurent, Scalar
from support.pclass import PClass

logger = logging.getLogger(__name__)

Key = Tuple[int, int]  # (q-degree, t-degree)


class LogQSeries:
    """
    Immutable sum of c_{d,j} q^d t^j with c_{d,j} in PClass.

    Attributes:
        n: ambient dimension shared by every PClass coefficient
        q_order: truncation order D (q^(D+1) = 0)
        t_bound: largest t-degree allowed; exceeding it raises TDegreeOverflow
        terms: sparse map (d, j) -> nonzero PClass
    """

    __slots__ = ("n", "q_order", "t_bound", "terms")

    def __init__(self, n: int, q_order: int, t_bound: int, terms: Mapping[Key, PClass] = None):
        self.n = n
        self.q_order = q_order
        self.t_bound = t_bound
        clean: Dict[Key, PClass] = {}
        for (d, j), c in (terms or {}).items():
            if d > q_order or not c:
                continue
            if c.n != n:
                raise IncompatibleDimension(f"coefficient at q^{d} t^{j} lives on P^{c.n}, series on P^{n}")
            if j > t_bound:
                raise TDegreeOverflow(
                    f"t-degree {j} at q^{d} exceeds tBound={t_bound}; raise the bound instead of truncating"
                )
            clean[(d, j)] = c
        self.terms = clean

    # ============ CONSTRUCTORS ============

    @classmethod
    def zero(cls, n: int, q_order: int, t_bound: int) -> "LogQSeries":
        return cls(n, q_order, t_bound)

    @classmethod
    def constant(cls, value: PClass, q_order: int, t_bound: int) -> "LogQSeries":
        return cls(value.n, q_order, t_bound, {(0, 0): value})

    @classmethod
    def one(cls, n: int, q_order: int, t_bound: int) -> "LogQSeries":
        return cls.constant(PClass.one(n), q_order, t_bound)

    @classmethod
    def variable_t(cls, n: int, q_order: int, t_bound: int) -> "LogQSeries":
        return cls(n, q_order, t_bound, {(0, 1): PClass.one(n)})

    @classmethod
    def from_scalars(cls, n: int, q_order: int, t_bound: int,
                     coefficients: Mapping[Key, Scalar]) -> "LogQSeries":
        """Scalar series (no p, no hbar) from a map (d, j) -> rational"""
        return cls(n, q_order, t_bound, {
            key: PClass.constant(n, c) for key, c in coefficients.items() if c
        })

    @classmethod
    def from_q_list(cls, n: int, t_bound: int, coefficients: List[Fraction]) -> "LogQSeries":
        """Pure q-series sum_d coefficients[d] q^d"""
        return cls.from_scalars(n, len(coefficients) - 1, t_bound,
                                {(d, 0): c for d, c in enumerate(coefficients)})

    # ============ ACCESS ============

    def __getitem__(self, key: Key) -> PClass:
        return self.terms.get(key) or PClass.zero(self.n)

    def is_zero(self) -> bool:
        return not self.terms

    def is_scalar(self) -> bool:
        return all(c.is_scalar() for c in self.terms.values())

    def is_pure_q(self) -> bool:
        """Scalar, t-free and q-positive: the shape of a shift or gauge exponent"""
        return self.is_scalar() and all(j == 0 and d >= 1 for d, j in self.terms)

    def q_valuation(self) -> Optional[int]:
        return min((d for d, _ in self.terms), default=None)

    def max_t_degree(self) -> int:
        return max((j for _, j in self.terms), default=0)

    def q_list(self) -> List[Fraction]:
        """Coefficients of a t-free scalar series as a dense list"""
        out = [Fraction(0)] * (self.q_order + 1)
        for (d, j), c in self.terms.items():
            if j:
                raise BadShift(f"series carries t^{j} at q^{d}; expected a pure q-series")
            out[d] = c.scalar_value()
        return out

    def component(self, p_exp: int, hbar_exp: int) -> "LogQSeries":
        """Scalar series collecting the p^p_exp hbar^hbar_exp coefficient of every slot"""
        picked = {}
        for key, c in self.terms.items():
            v = c[p_exp][hbar_exp]
            if v:
                picked[key] = v
        return LogQSeries.from_scalars(self.n, self.q_order, self.t_bound, picked)

    def t_polynomial(self, d: int) -> Dict[int, PClass]:
        return {j: c for (dd, j), c in self.terms.items() if dd == d}

    def _check(self, other: "LogQSeries"):
        if self.n != other.n:
            raise IncompatibleDimension(f"series over P^{self.n} and P^{other.n} cannot be combined")

    def _like(self, terms: Mapping[Key, PClass], q_order: int = None, t_bound: int = None) -> "LogQSeries":
        return LogQSeries(self.n,
                          self.q_order if q_order is None else q_order,
                          self.t_bound if t_bound is None else t_bound,
                          terms)

    def map_coefficients(self, fn) -> "LogQSeries":
        return self._like({k: fn(c) for k, c in self.terms.items()})

    def with_bounds(self, q_order: int = None, t_bound: int = None) -> "LogQSeries":
        return self._like(self.terms, q_order, t_bound)

    def with_dimension(self, n: int) -> "LogQSeries":
        """Re-read every coefficient on P^n (truncating or padding the p-vector)"""
        return LogQSeries(n, self.q_order, self.t_bound,
                          {k: c.with_dimension(n) for k, c in self.terms.items()})

    # ============ ARITHMETIC ============

    def __add__(self, other: "LogQSeries") -> "LogQSeries":
        self._check(other)
        q_order = min(self.q_order, other.q_order)
        acc = dict(self.terms)
        for key, c in other.terms.items():
            acc[key] = acc[key] + c if key in acc else c
        return self._like(acc, q_order, max(self.t_bound, other.t_bound))

    def __neg__(self) -> "LogQSeries":
        return self.map_coefficients(lambda c: -c)

    def __sub__(self, other: "LogQSeries") -> "LogQSeries":
        return self + (-other)

    def scale(self, c: Scalar) -> "LogQSeries":
        return self.map_coefficients(lambda v: v.scale(c))

    def shift_hbar(self, k: int) -> "LogQSeries":
        return self.map_coefficients(lambda v: v.shift_hbar(k))

    def shift_p(self, k: int) -> "LogQSeries":
        return self.map_coefficients(lambda v: v.shift_p(k))

    def __mul__(self, other) -> "LogQSeries":
        if isinstance(other, (PClass, HbarLaurent)):
            return self.map_coefficients(lambda v: v * other)
        if not isinstance(other, LogQSeries):
            return self.scale(other)
        self._check(other)
        q_order = min(self.q_order, other.q_order)
        t_bound = max(self.t_bound, other.t_bound)
        if other.is_scalar():
            return _times_scalar_series(self, other, q_order, t_bound)
        if self.is_scalar():
            return _times_scalar_series(other, self, q_order, t_bound)
        acc: Dict[Key, PClass] = {}
        for (d1, j1), a in self.terms.items():
            for (d2, j2), b in other.terms.items():
                d = d1 + d2
                if d > q_order:
                    continue
                prod = a * b
                if prod:
                    key = (d, j1 + j2)
                    acc[key] = acc[key] + prod if key in acc else prod
        return LogQSeries(self.n, q_order, t_bound, acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LogQSeries":
        result = LogQSeries.one(self.n, self.q_order, self.t_bound)
        for _ in range(k):
            result = result * self
        return result

    # ============ COMPARISON ============

    def __eq__(self, other) -> bool:
        if not isinstance(other, LogQSeries):
            return NotImplemented
        return self.n == other.n and self.q_order == other.q_order and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.n, self.q_order, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        shown = ", ".join(f"q^{d}t^{j}: {c}" for (d, j), c in sorted(self.terms.items())[:6])
        more = "" if len(self.terms) <= 6 else f", ... ({len(self.terms)} terms)"
        return f"LogQSeries(n={self.n}, D={self.q_order}, tBound={self.t_bound}; {shown}{more})"


def _times_scalar_series(x: LogQSeries, s: LogQSeries, q_order: int, t_bound: int) -> LogQSeries:
    """x * s for scalar s, accumulating on raw dicts to avoid PClass churn"""
    n = x.n
    scalars = [(d, j, c.scalar_value()) for (d, j), c in s.terms.items()]
    acc: Dict[Key, List[Dict[int, Fraction]]] = {}
    for (d1, j1), a in x.terms.items():
        for d2, j2, c in scalars:
            d = d1 + d2
            if d > q_order:
                continue
            key = (d, j1 + j2)
            slots = acc.get(key)
            if slots is None:
                slots = acc[key] = [dict() for _ in range(n + 1)]
            for i, h in enumerate(a.coeffs):
                if not h:
                    continue
                slot = slots[i]
                for e, v in h.terms.items():
                    slot[e] = slot.get(e, 0) + v * c
    return LogQSeries(n, q_order, t_bound, {
        key: PClass(n, [HbarLaurent._wrap({e: v for e, v in slot.items() if v}) for slot in slots])
        for key, slots in acc.items()
    })


# ============ SCALAR q-LIST HELPERS ============

def q_list_mul(a: List[Fraction], b: List[Fraction], order: int) -> List[Fraction]:
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a[: order + 1]):
        if not x:
            continue
        for j, y in enumerate(b[: order + 1 - i]):
            if y:
                out[i + j] += x * y
    return out


def q_list_exp(g: List[Fraction], order: int) -> List[Fraction]:
    """exp of a q-positive list via E' = g' E"""
    if g and g[0]:
        raise NonNilpotentConstant(f"exp of a q-series with constant term {g[0]}")
    e = [Fraction(0)] * (order + 1)
    e[0] = Fraction(1)
    for m in range(1, order + 1):
        total = Fraction(0)
        for k in range(1, m + 1):
            if k < len(g) and g[k]:
                total += k * g[k] * e[m - k]
        e[m] = total / m
    return e


def q_list_inverse(a: List[Fraction], order: int) -> List[Fraction]:
    """1/a for a list with nonzero constant term"""
    inv = [Fraction(0)] * (order + 1)
    inv[0] = 1 / Fraction(a[0])
    for m in range(1, order + 1):
        total = Fraction(0)
        for k in range(1, min(m, len(a) - 1) + 1):
            if a[k]:
                total += a[k] * inv[m - k]
        inv[m] = -total * inv[0]
    return inv


# ============ OPERATIONS ============

def coeff(x: LogQSeries, q_deg: int, t_deg: int, p_deg: int, h_deg: int) -> Fraction:
    """
    Exact coefficient of q^q_deg t^t_deg p^p_deg hbar^h_deg.

    Raises:
        OutOfRange: an index lies outside the representation bounds
    """
    if not 0 <= q_deg <= x.q_order:
        raise OutOfRange(f"q-degree {q_deg} outside 0..{x.q_order}")
    if not 0 <= t_deg <= x.t_bound:
        raise OutOfRange(f"t-degree {t_deg} outside 0..{x.t_bound}")
    if not 0 <= p_deg <= x.n:
        raise OutOfRange(f"p-degree {p_deg} outside 0..{x.n}")
    c = x.terms.get((q_deg, t_deg))
    return c[p_deg][h_deg] if c is not None else Fraction(0)


def d_dt(x: LogQSeries) -> LogQSeries:
    """Total t-derivative: d/dt(t^j q^d) = j t^(j-1) q^d + d t^j q^d"""
    acc: Dict[Key, PClass] = {}
    for (d, j), c in x.terms.items():
        if d:
            acc[(d, j)] = acc[(d, j)] + c.scale(d) if (d, j) in acc else c.scale(d)
        if j:
            key = (d, j - 1)
            term = c.scale(j)
            acc[key] = acc[key] + term if key in acc else term
    return x._like(acc)


def exp_series(x: LogQSeries) -> LogQSeries:
    """
    Exponential of a series with nilpotent constant block.

    Raises:
        NonNilpotentConstant: the q^0 t^0 p^0 coefficient is nonzero
    """
    head = x.terms.get((0, 0))
    if head is not None and head[0]:
        raise NonNilpotentConstant(f"constant block {head[0]} is not nilpotent; exp does not truncate")
    result = LogQSeries.one(x.n, x.q_order, x.t_bound)
    term = result
    limit = x.n + x.q_order + x.t_bound + 2
    for m in range(1, limit + 1):
        term = (term * x).scale(Fraction(1, m))
        if term.is_zero():
            return result
        result = result + term
    raise NonNilpotentConstant("exponential did not terminate inside the truncation orders")


def shift_t(x: LogQSeries, g: LogQSeries) -> LogQSeries:
    """
    Substitute t -> t + g(q) for a pure q-positive scalar g.

    Every explicit t^j becomes (t+g)^j and every q^d picks up exp(d*g).

    Raises:
        BadShift: g has p, hbar or t content, or a constant term
    """
    if not g.is_pure_q():
        raise BadShift("shift must be a scalar, t-free series with q-valuation >= 1")
    if g.is_zero():
        return x
    order = x.q_order
    g_list = [Fraction(0)] * (order + 1)
    for (d, _), c in g.terms.items():
        if d <= order:
            g_list[d] = c.scalar_value()
    e_list = q_list_exp(g_list, order)

    e_pow: Dict[int, List[Fraction]] = {0: [Fraction(1)] + [Fraction(0)] * order}
    g_pow: Dict[int, List[Fraction]] = {0: e_pow[0]}
    table: Dict[Tuple[int, int], List[Fraction]] = {}

    def power(cache, base, k):
        if k not in cache:
            cache[k] = q_list_mul(power(cache, base, k - 1), base, order)
        return cache[k]

    def factor(d: int, i: int) -> List[Fraction]:
        if (d, i) not in table:
            table[(d, i)] = q_list_mul(power(e_pow, e_list, d), power(g_pow, g_list, i), order - d)
        return table[(d, i)]

    n = x.n
    acc: Dict[Key, List[Dict[int, Fraction]]] = {}
    for (d, j), c in x.terms.items():
        for i in range(j + 1):
            series = factor(d, i)
            binom = comb(j, i)
            for e, s in enumerate(series):
                if not s:
                    continue
                key = (d + e, j - i)
                slots = acc.get(key)
                if slots is None:
                    slots = acc[key] = [dict() for _ in range(n + 1)]
                weight = s * binom
                for p_exp, h in enumerate(c.coeffs):
                    if not h:
                        continue
                    slot = slots[p_exp]
                    for h_exp, v in h.terms.items():
                        slot[h_exp] = slot.get(h_exp, 0) + v * weight
    return x._like({
        key: PClass(n, [HbarLaurent._wrap({e: v for e, v in slot.items() if v}) for slot in slots])
        for key, slots in acc.items()
    })


def split_mirror_map(big_t: LogQSeries) -> List[Fraction]:
    """
    Check that big_t = t + G(q) and return G as a dense q-list.

    Raises:
        BadShift: big_t is not of that shape
    """
    if not big_t.is_scalar():
        raise BadShift("mirror map must be a scalar series")
    g = [Fraction(0)] * (big_t.q_order + 1)
    for (d, j), c in big_t.terms.items():
        v = c.scalar_value()
        if (d, j) == (0, 1):
            if v != 1:
                raise BadShift(f"mirror map must start with t, found {v}*t")
        elif j != 0 or d == 0:
            raise BadShift(f"mirror map has a stray term at q^{d} t^{j}")
        else:
            g[d] = v
    if (0, 1) not in big_t.terms:
        raise BadShift("mirror map has no linear t term")
    return g


def invert_map(big_t: LogQSeries) -> LogQSeries:
    """
    Invert T = t + G(q) into t = T + H(Q), Q = e^T, to order D.

    Fixed point H = -G(Q e^H), one q-order gained per iteration.

    Returns:
        The series T + H(Q), written in the same (t, q) slots
    """
    order = big_t.q_order
    g = split_mirror_map(big_t)
    h = [Fraction(0)] * (order + 1)
    for _ in range(order):
        e_h = q_list_exp(h, order)
        e_pow = [Fraction(1)] + [Fraction(0)] * order
        composed = [Fraction(0)] * (order + 1)
        for d in range(1, order + 1):
            e_pow = q_list_mul(e_pow, e_h, order)
            if not g[d]:
                continue
            for k in range(order - d + 1):
                composed[d + k] += g[d] * e_pow[k]
        h = [-c for c in composed]
    logger.debug("mirror map inverse: first coefficients %s", h[1:4])
    coefficients = {(d, 0): c for d, c in enumerate(h) if c}
    coefficients[(0, 1)] = Fraction(1)
    return LogQSeries.from_scalars(big_t.n, order, big_t.t_bound, coefficients)


def shift_part(big_t: LogQSeries) -> LogQSeries:
    """G(q) = T(t) - t as a pure q-series, ready for shift_t"""
    g = split_mirror_map(big_t)
    return LogQSeries.from_scalars(big_t.n, big_t.q_order, big_t.t_bound,
                                   {(d, 0): c for d, c in enumerate(g) if c})


def series_sum(items: Iterable[LogQSeries]) -> LogQSeries:
    items = list(items)
    total = items[0]
    for item in items[1:]:
        total = total + item
    return total


def invert_unit_series(u: LogQSeries) -> LogQSeries:
    """
    1/u for a scalar series whose q^0 part is a nonzero constant.

    Raises:
        NonUnit: u is not scalar, or its q^0 part is zero or depends on t
    """
    if not u.is_scalar():
        raise NonUnit("only scalar series can be inverted here")
    head = u.terms.get((0, 0))
    if head is None or not head.scalar_value():
        raise NonUnit("series has zero constant term")
    if any(d == 0 and j > 0 for d, j in u.terms):
        raise NonUnit("q^0 part depends on t; the inverse would not truncate")
    c = head.scalar_value()
    v = u.scale(1 / c) - LogQSeries.one(u.n, u.q_order, u.t_bound)
    minus_v = -v
    total = LogQSeries.one(u.n, u.q_order, u.t_bound)
    power = total
    for _ in range(u.q_order):
        power = power * minus_v
        if power.is_zero():
            break
        total = total + power
    return total.scale(1 / c)

# support/pclass.py
"""
Truncated classes on P^n
Polynomials in the hyperplane class p, cut at p^(n+1) = 0, with HbarLaurent coefficients
"""

from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

from support.errors import IncompatibleDimension, ZeroLeading
from support.hbar_laurent import HbarLaurent, Scalar

_ZERO = HbarLaurent.zero()


class PClass:
    """
    Immutable element of Q[hbar, 1/hbar][p] / (p^(n+1)).

    coeffs[i] is the HbarLaurent coefficient of p^i, always exactly n+1 long.
    """

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: Sequence[HbarLaurent] = ()):
        if n < 0:
            raise IncompatibleDimension(f"ambient dimension must be >= 0, got {n}")
        padded = list(coeffs[: n + 1])
        padded.extend([_ZERO] * (n + 1 - len(padded)))
        self.n = n
        self.coeffs: Tuple[HbarLaurent, ...] = tuple(padded)

    # ============ CONSTRUCTORS ============

    @classmethod
    def zero(cls, n: int) -> "PClass":
        return cls(n)

    @classmethod
    def one(cls, n: int) -> "PClass":
        return cls(n, [HbarLaurent.one()])

    @classmethod
    def constant(cls, n: int, value: Scalar, hbar_exp: int = 0) -> "PClass":
        return cls(n, [HbarLaurent.monomial(value, hbar_exp)])

    @classmethod
    def monomial(cls, n: int, p_exp: int, value: Scalar = 1, hbar_exp: int = 0) -> "PClass":
        """value * p^p_exp * hbar^hbar_exp (zero once p_exp > n)"""
        if p_exp > n:
            return cls(n)
        coeffs = [_ZERO] * (n + 1)
        coeffs[p_exp] = HbarLaurent.monomial(value, hbar_exp)
        return cls(n, coeffs)

    @classmethod
    def linear(cls, n: int, p_coeff: Scalar, hbar_coeff: Scalar) -> "PClass":
        """The linear form p_coeff*p + hbar_coeff*hbar"""
        coeffs = [HbarLaurent.monomial(hbar_coeff, 1)]
        if n >= 1:
            coeffs.append(HbarLaurent.monomial(p_coeff, 0))
        return cls(n, coeffs)

    # ============ ACCESS ============

    def __getitem__(self, p_exp: int) -> HbarLaurent:
        if 0 <= p_exp <= self.n:
            return self.coeffs[p_exp]
        return _ZERO

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_scalar(self) -> bool:
        """True when only the p^0 hbar^0 slot may be nonzero"""
        head = self.coeffs[0]
        if any(self.coeffs[1:]):
            return False
        return not head or head.exponents() == (0,)

    def scalar_value(self) -> Fraction:
        return self.coeffs[0][0]

    def _check(self, other: "PClass"):
        if self.n != other.n:
            raise IncompatibleDimension(f"PClass dimensions differ: {self.n} vs {other.n}")

    # ============ ARITHMETIC ============

    def __add__(self, other: "PClass") -> "PClass":
        self._check(other)
        return PClass(self.n, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "PClass":
        return PClass(self.n, [-a for a in self.coeffs])

    def __sub__(self, other: "PClass") -> "PClass":
        return self + (-other)

    def __mul__(self, other) -> "PClass":
        if isinstance(other, HbarLaurent):
            return PClass(self.n, [a * other for a in self.coeffs])
        if not isinstance(other, PClass):
            return self.scale(other)
        self._check(other)
        n = self.n
        acc: List[Dict[int, Fraction]] = [dict() for _ in range(n + 1)]
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if not b:
                    continue
                slot = acc[i + j]
                for e1, c1 in a.terms.items():
                    for e2, c2 in b.terms.items():
                        e = e1 + e2
                        slot[e] = slot.get(e, 0) + c1 * c2
        return PClass(n, [HbarLaurent._wrap({e: c for e, c in s.items() if c}) for s in acc])

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> "PClass":
        return PClass(self.n, [a.scale(c) for a in self.coeffs])

    def shift_hbar(self, k: int) -> "PClass":
        return PClass(self.n, [a.shift(k) for a in self.coeffs])

    def shift_p(self, k: int) -> "PClass":
        """
        Multiply by p^k. Negative k divides by p^|k| and drops the terms
        that would land below p^0.
        """
        if k >= 0:
            return PClass(self.n, [_ZERO] * k + list(self.coeffs[: self.n + 1 - k]))
        return PClass(self.n, list(self.coeffs[-k:]))

    def with_dimension(self, n: int) -> "PClass":
        """Re-read in P^n: truncate (or zero-pad) the p-vector"""
        return PClass(n, self.coeffs)

    def __pow__(self, k: int) -> "PClass":
        result = PClass.one(self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # ============ COMPARISON ============

    def __eq__(self, other) -> bool:
        if not isinstance(other, PClass):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.n, self.coeffs))

    def __repr__(self) -> str:
        parts = []
        for i, a in enumerate(self.coeffs):
            if a:
                parts.append(f"({a})*p^{i}" if i else f"({a})")
        return "PClass(n=%d: %s)" % (self.n, " + ".join(parts) if parts else "0")


def invert_unit(x: PClass) -> PClass:
    """
    Invert a class whose p^0 coefficient is a single hbar-monomial.

    Writes x = u(1 + y) with u the monomial and y nilpotent, then sums the
    geometric series, which stops at p^n.

    Raises:
        ZeroLeading: the p^0 coefficient vanishes
        NonMonomialLeading: the p^0 coefficient has two or more hbar-terms
    """
    head = x.coeffs[0]
    if not head:
        raise ZeroLeading(f"p^0 part of {x} is zero; class is nilpotent")
    u_inv = head.inverse()
    y = PClass(x.n, [_ZERO] + [c * u_inv for c in x.coeffs[1:]])
    minus_y = -y
    total = PClass.one(x.n)
    power = PClass.one(x.n)
    for _ in range(x.n):
        power = power * minus_y
        if power.is_zero():
            break
        total = total + power
    return total * u_inv


def product(factors: Iterable[PClass], n: int) -> PClass:
    result = PClass.one(n)
    for f in factors:
        result = result * f
    return result

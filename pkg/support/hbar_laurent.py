# support/hbar_laurent.py
"""
Laurent polynomials in hbar
Finite-support maps exponent -> Fraction with no stored zeros
"""

from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Tuple, Union

from support.errors import NonMonomialLeading, ZeroLeading

Rat = Fraction
Scalar = Union[int, Fraction]


class HbarLaurent:
    """
    Immutable element of Q[hbar, 1/hbar].

    Stored as a dict from integer hbar-exponent to a nonzero Fraction.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, Scalar] = None):
        clean: Dict[int, Fraction] = {}
        if terms:
            for exp, c in terms.items():
                if c:
                    clean[int(exp)] = Fraction(c)
        self._terms = clean

    @classmethod
    def _wrap(cls, terms: Dict[int, Fraction]) -> "HbarLaurent":
        # terms already clean; skip validation on hot paths
        obj = cls.__new__(cls)
        obj._terms = terms
        return obj

    @classmethod
    def monomial(cls, coefficient: Scalar, exponent: int = 0) -> "HbarLaurent":
        return cls({exponent: coefficient})

    @classmethod
    def one(cls) -> "HbarLaurent":
        return cls._wrap({0: Fraction(1)})

    @classmethod
    def zero(cls) -> "HbarLaurent":
        return cls._wrap({})

    # ============ ACCESS ============

    @property
    def terms(self) -> Dict[int, Fraction]:
        """Read-only view by convention; callers must not mutate it"""
        return self._terms

    def __getitem__(self, exponent: int) -> Fraction:
        return self._terms.get(exponent, Fraction(0))

    def __iter__(self) -> Iterator[Tuple[int, Fraction]]:
        return iter(sorted(self._terms.items()))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def exponents(self) -> Tuple[int, ...]:
        return tuple(sorted(self._terms))

    def min_exponent(self) -> int:
        return min(self._terms) if self._terms else 0

    def max_exponent(self) -> int:
        return max(self._terms) if self._terms else 0

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    # ============ ARITHMETIC ============

    def __add__(self, other: "HbarLaurent") -> "HbarLaurent":
        if not isinstance(other, HbarLaurent):
            other = HbarLaurent.monomial(other)
        out = dict(self._terms)
        for exp, c in other._terms.items():
            v = out.get(exp, 0) + c
            if v:
                out[exp] = v
            else:
                out.pop(exp, None)
        return HbarLaurent._wrap(out)

    __radd__ = __add__

    def __neg__(self) -> "HbarLaurent":
        return HbarLaurent._wrap({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "HbarLaurent") -> "HbarLaurent":
        if not isinstance(other, HbarLaurent):
            other = HbarLaurent.monomial(other)
        return self + (-other)

    def __rsub__(self, other) -> "HbarLaurent":
        return (-self) + other

    def __mul__(self, other) -> "HbarLaurent":
        if not isinstance(other, HbarLaurent):
            return self.scale(other)
        out: Dict[int, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return HbarLaurent._wrap({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> "HbarLaurent":
        if not c:
            return HbarLaurent.zero()
        c = Fraction(c)
        return HbarLaurent._wrap({e: v * c for e, v in self._terms.items()})

    def shift(self, k: int) -> "HbarLaurent":
        """Multiply by hbar^k"""
        return HbarLaurent._wrap({e + k: c for e, c in self._terms.items()})

    def inverse(self) -> "HbarLaurent":
        """Inverse of a monomial c*hbar^k; anything else has no Laurent inverse"""
        if not self._terms:
            raise ZeroLeading("cannot invert the zero Laurent polynomial")
        if len(self._terms) > 1:
            raise NonMonomialLeading(
                f"Laurent polynomial {self} has {len(self._terms)} hbar-terms; only monomials are units"
            )
        (exp, c), = self._terms.items()
        return HbarLaurent._wrap({-exp: 1 / c})

    # ============ COMPARISON / DISPLAY ============

    def __eq__(self, other) -> bool:
        if isinstance(other, HbarLaurent):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ({0: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exp, c in sorted(self._terms.items(), reverse=True):
            if exp == 0:
                parts.append(f"{c}")
            elif exp == 1:
                parts.append(f"{c}*h")
            else:
                parts.append(f"{c}*h^{exp}")
        return " + ".join(parts)


def laurent_sum(items: Iterable[HbarLaurent]) -> HbarLaurent:
    out: Dict[int, Fraction] = {}
    for item in items:
        for e, c in item.terms.items():
            out[e] = out.get(e, 0) + c
    return HbarLaurent._wrap({e: c for e, c in out.items() if c})

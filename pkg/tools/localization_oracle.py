# tools/localization_oracle.py
"""
Localization Oracle
Degree-1 torus fixed-point sums, used only to cross-check the mirror pipeline
"""

import logging
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import List, Sequence, Tuple

# Add parent directory to path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from config.settings import DEFAULT_ORACLE_WEIGHTS, ORACLE_WEIGHTS_ENV
from support.errors import ConfigError, DimensionMismatch, NonGenericWeights
from tools.euler_data import BundleSpec, InsertionSpec, dimension_check

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WeightVector:
    """Torus weights lambda_0..lambda_N; pairwise distinct"""
    weights: Tuple[Fraction, ...]

    def __post_init__(self):
        values = tuple(Fraction(x) for x in self.weights)
        object.__setattr__(self, "weights", values)
        for a, b in combinations(values, 2):
            if a == b:
                raise NonGenericWeights(f"weights must be pairwise distinct, {a} repeats")

    def for_dimension(self, n: int) -> Tuple[Fraction, ...]:
        if len(self.weights) < n + 1:
            raise NonGenericWeights(f"P^{n} needs {n + 1} weights, vector has {len(self.weights)}")
        return self.weights[: n + 1]


def default_weight_vectors() -> List[WeightVector]:
    """Generic vectors from settings, or from MIRROR_ORACLE_WEIGHTS when set"""
    if not ORACLE_WEIGHTS_ENV.strip():
        return [WeightVector(tuple(v)) for v in DEFAULT_ORACLE_WEIGHTS]
    try:
        return [
            WeightVector(tuple(Fraction(x.strip()) for x in chunk.split(",")))
            for chunk in ORACLE_WEIGHTS_ENV.split(";") if chunk.strip()
        ]
    except ValueError as exc:
        raise ConfigError(f"MIRROR_ORACLE_WEIGHTS is not a list of rational vectors: {exc}")


def _edge_euler(b: BundleSpec, li: Fraction, lj: Fraction) -> Fraction:
    """Euler class of V_1 on the line through q_i, q_j"""
    value = Fraction(1)
    for l in b.positives:
        for a in range(l + 1):
            value *= a * li + (l - a) * lj
    for k in b.negatives:
        for a in range(1, k):
            value *= -(a * li + (k - a) * lj)
    return value


def _fixed_points(i: int, j: int, m: int):
    """Each marking sits at q_i or q_j; two markings at one endpoint sit on a contracted bubble"""
    return product((i, j), repeat=m)


def localize_degree1(b: BundleSpec, ins: InsertionSpec, w: WeightVector) -> Fraction:
    """
    K_1 by Atiyah-Bott on degree-1 maps: a sum over coordinate lines q_i q_j and
    over the endpoints carrying each marking.

    Raises:
        DimensionMismatch: insertions not of critical dimension
        NonGenericWeights: a fixed-point denominator vanishes
    """
    verdict = dimension_check(b, ins)
    if not verdict.admissible:
        raise DimensionMismatch(verdict.reason)
    lam = w.for_dimension(b.n)
    total = Fraction(0)
    for i, j in combinations(range(b.n + 1), 2):
        euler = _edge_euler(b, lam[i], lam[j])
        if not euler:
            continue
        rest = Fraction(1)
        for a in (i, j):
            for c in range(b.n + 1):
                if c not in (i, j):
                    rest *= lam[a] - lam[c]
        for placement in _fixed_points(i, j, ins.m):
            total += _contribution(ins, placement, i, j, lam, euler, rest)
    logger.debug("degree-1 localization of %s with %s: %s", b.label(), ins.label(), total)
    return total


def _contribution(ins: InsertionSpec, placement: Sequence[int], i: int, j: int,
                  lam: Sequence[Fraction], euler: Fraction, rest: Fraction) -> Fraction:
    other = {i: j, j: i}
    h_psi = ins.points
    numerator = euler
    for (h, _), v in zip(h_psi, placement):
        numerator *= lam[v] ** h
    psi = h_psi[-1][1]
    last = placement[-1]

    if ins.m == 1:
        tangent = (lam[last] - lam[other[last]]) * rest
        psi_weight = lam[other[last]] - lam[last]
    elif placement[0] != placement[1]:
        tangent = (lam[i] - lam[j]) * (lam[j] - lam[i]) * rest
        psi_weight = lam[other[last]] - lam[last]
    else:
        # both markings on a contracted bubble at one endpoint
        tangent = (lam[last] - lam[other[last]]) ** 2 * rest
        psi_weight = Fraction(0)

    if psi:
        numerator *= psi_weight ** psi
        if not numerator:
            return Fraction(0)
    if not tangent:
        raise NonGenericWeights(f"fixed locus over edge ({i},{j}) has a vanishing tangent weight")
    return numerator / tangent

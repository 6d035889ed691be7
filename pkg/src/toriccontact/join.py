"""Arithmetic of the (l1, l2)-join and the reverse-join algorithm.

The join of two toric contact structures is, at the polytope level, the
product ``l1*P1 x l2*P2``.  This module implements the integer bookkeeping:
smoothness of the join, Reeb/quotient generator pairs, the S^1-join covering
data, the polytope-level join, and the reverse algorithm recovering join
parameters from ruled-orbifold data (n, m1, m2, k1, k2).

Note on conventions: the Reeb generator pair exposed by
:func:`join_generators` carries the factor 1/2, ``(1/(2l1), 1/(2l2))``; an
equally common normalization drops the 2 (``(1/l1, 1/l2)``), differing by an
overall transverse homothety.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import intlinalg
from .errors import (
    GuaranteeNotApplicableError,
    InconsistentInputError,
    InvalidArgumentError,
    InvalidKaehlerClassError,
)
from .polytope import LabelledPolytope, frac_str, product


@dataclass(frozen=True)
class JoinParams:
    """Join exponents (l1, l2) plus the isotropy orders of the factors."""

    l1: int
    l2: int
    order1: int = 1
    order2: int = 1

    def __post_init__(self):
        if min(self.l1, self.l2, self.order1, self.order2) <= 0:
            raise InvalidArgumentError("join parameters must be positive")
        if math.gcd(self.l1, self.l2) != 1:
            raise InvalidArgumentError("l1 and l2 must be coprime")


@dataclass(frozen=True)
class ReverseJoinProblem:
    """Ruled-orbifold input data: degree n, branch orders, Kaehler class."""

    n: int
    m1: int
    m2: int
    k1: int
    k2: int

    def __post_init__(self):
        if min(self.m1, self.m2, self.k1, self.k2) <= 0:
            raise InvalidArgumentError("m1, m2, k1, k2 must be positive")
        if Fraction(self.k1, self.k2) <= -self.n:
            raise InvalidKaehlerClassError(
                f"k1/k2 = {self.k1}/{self.k2} must exceed -n = {-self.n}"
            )

    def to_json(self) -> dict:
        return {"n": self.n, "m1": self.m1, "m2": self.m2, "k1": self.k1, "k2": self.k2}

    @classmethod
    def from_json(cls, data: dict) -> "ReverseJoinProblem":
        return cls(int(data["n"]), int(data["m1"]), int(data["m2"]),
                   int(data["k1"]), int(data["k2"]))


@dataclass(frozen=True)
class ReverseJoinSolution:
    r: Optional[Fraction]
    w1: Optional[int]
    w2: Optional[int]
    l1: Optional[int]
    l2: Optional[int]
    joinable: bool
    smooth: bool
    degenerate_product: bool = False

    def to_json(self) -> dict:
        if self.degenerate_product:
            return {"degenerate_product": True, "joinable": True}
        return {
            "r": frac_str(self.r),
            "w": [self.w1, self.w2],
            "l": [self.l1, self.l2],
            "joinable": self.joinable,
            "smooth": self.smooth,
        }


def join_is_smooth(p: JoinParams) -> bool:
    """Smoothness of the (l1,l2)-join: gcd(l1*order2, l2*order1) = 1."""
    return math.gcd(p.l1 * p.order2, p.l2 * p.order1) == 1


def join_generators(l1: int, l2: int) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
    """Reeb and quotient generator pairs of the (l1,l2)-join torus."""
    _check_coprime_positive(l1, l2)
    reeb = (Fraction(1, 2 * l1), Fraction(1, 2 * l2))
    quotient = (Fraction(1, 2 * l1), Fraction(-1, 2 * l2))
    return reeb, quotient


def s1_join_cover(l1: int, l2: int) -> tuple[int, int]:
    """The join with S^1 is an l1-fold cover of the factor with Reeb field l2*xi."""
    _check_coprime_positive(l1, l2)
    return l1, l2


def join_polytope(p1: LabelledPolytope, p2: LabelledPolytope, l1: int, l2: int) -> LabelledPolytope:
    """Polytope of the join: product of l1*P1 and l2*P2, labels concatenated."""
    _check_coprime_positive(l1, l2)
    return product(p1.rescale(l1), p2.rescale(l2))


def reverse_join(prob: ReverseJoinProblem) -> ReverseJoinSolution:
    """Recover join data (r, w, l) from ruled-orbifold data.

    Solves, in order, the three exact identities
      2*k1*r = n*k2*(1-r),
      r*(w1*m2 + w2*m1) = w1*m2 - w2*m1,
      l2*n = l1*(w1*m2 - w2*m1),
    for the unique positive coprime pairs (w1, w2) and (l1, l2).  The result
    is a genuine join iff l2 = gcd(m*l2, |w1*m2 - w2*m1|) with m = gcd(m1,m2),
    and smooth iff additionally gcd(w1, l2) = gcd(w2, l2) = 1.
    """
    n, m1, m2, k1, k2 = prob.n, prob.m1, prob.m2, prob.k1, prob.k2
    if n == 0:
        return ReverseJoinSolution(None, None, None, None, None,
                                   joinable=True, smooth=False,
                                   degenerate_product=True)
    r = Fraction(n * k2, 2 * k1 + n * k2)
    # (1+r) m1 : (1-r) m2 cleared to the coprime integer pair (w1, w2).
    a = (1 + r) * m1
    b = (1 - r) * m2
    denom = math.lcm(a.denominator, b.denominator)
    w1, w2 = int(a * denom), int(b * denom)
    if w1 <= 0 or w2 <= 0:
        raise InconsistentInputError("no positive coprime weight solution")
    g = math.gcd(w1, w2)
    w1, w2 = w1 // g, w2 // g
    delta = w1 * m2 - w2 * m1
    lq = Fraction(n, delta)
    l1, l2 = abs(lq.numerator), lq.denominator
    m = math.gcd(m1, m2)
    joinable = l2 == math.gcd(m * l2, abs(delta))
    smooth = joinable and math.gcd(w1, l2) == 1 and math.gcd(w2, l2) == 1
    return ReverseJoinSolution(r, w1, w2, l1, l2, joinable, smooth)


def easy_reverse(n: int, v1: int, v2: int) -> tuple[int, int, int, int]:
    """Positive coprime (w1, w2) with |n|*(w1*v2 - w2*v1) = n, plus l = (|n|, 1).

    Among the one-parameter family of solutions the representative with the
    smallest positive w2 is returned.
    """
    if n == 0:
        raise InvalidArgumentError("n must be nonzero")
    if min(v1, v2) <= 0 or math.gcd(v1, v2) != 1:
        raise InvalidArgumentError("v1, v2 must be positive coprime")
    sign = 1 if n > 0 else -1
    # a*v2 + b*v1 = sign with the shift (a, b) -> (a + k*v1, b - k*v2).
    _, x, y = intlinalg.gcd_ext(v2, v1)
    a, b = x * sign, y * sign
    # Smallest positive w2 = -b, i.e. largest b < 0, keeping a > 0.
    k = -((-b) // v2)  # floor adjustment to land b in (-v2, 0] ...
    b0 = b - k * v2
    a0 = a + k * v1
    if b0 == 0:
        b0 -= v2
        a0 += v1
    while a0 <= 0:
        a0 += v1
        b0 -= v2
    w1, w2 = a0, -b0
    return w1, w2, abs(n), 1


def harder_reverse_guarantee(prob: ReverseJoinProblem) -> bool:
    """Joinability is guaranteed when gcd(m1, m2, n) = 1 (or n = 0)."""
    if prob.n != 0 and math.gcd(prob.m1, prob.m2, prob.n) != 1:
        raise GuaranteeNotApplicableError(
            "guarantee requires gcd(m1, m2, n) = 1 or n = 0"
        )
    sol = reverse_join(prob)
    return sol.joinable


def _check_coprime_positive(l1: int, l2: int):
    if l1 <= 0 or l2 <= 0 or math.gcd(l1, l2) != 1:
        raise InvalidArgumentError("l1, l2 must be positive coprime integers")

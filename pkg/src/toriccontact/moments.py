"""Exact rational moments of labelled polytopes.

Interior moments use a boundary-fan triangulation from a base vertex and the
closed-form barycentric integral on each simplex.  Facet moments use the
boundary measure dsigma = (Euclidean surface measure)/||n_i|| determined by
the wedge relation n_i ^ dsigma = -dmu, which stays rational because only
||n_i||^2 enters the simplex formula.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import InvalidPolytopeError
from .polytope import LabelledPolytope

Point = tuple[Fraction, ...]
Monomial = tuple[int, ...]
Polynomial = Mapping[Monomial, Fraction]


def triangulate(poly: LabelledPolytope) -> list[tuple[Point, ...]]:
    """Full-dimensional simplices (n+1 vertices each) covering the polytope."""
    return _triangulate_face(poly, poly.vertices, poly.dim)


def _triangulate_face(poly, vset: Sequence[Point], rank: int) -> list[tuple[Point, ...]]:
    vset = sorted(vset)
    if rank == 0:
        return [(vset[0],)]
    v0 = vset[0]
    simplices = []
    seen = set()
    for f in poly.facets:
        sub = tuple(sorted(v for v in vset if f(v) == 0))
        if not sub or v0 in sub:
            continue
        if sub in seen or _affine_rank(sub) != rank - 1:
            continue
        seen.add(sub)
        for s in _triangulate_face(poly, sub, rank - 1):
            simplices.append((v0,) + s)
    return simplices


def _affine_rank(points: Sequence[Point]) -> int:
    if len(points) <= 1:
        return 0
    base = points[0]
    rows = [[p[i] - base[i] for i in range(len(base))] for p in points[1:]]
    from . import intlinalg

    return intlinalg.rational_rank(rows)


def simplex_volume(verts: Sequence[Point]) -> Fraction:
    """Lebesgue volume of a full-dimensional simplex in its ambient space."""
    n = len(verts) - 1
    base = verts[0]
    rows = [[verts[j + 1][i] - base[i] for i in range(n)] for j in range(n)]
    return abs(_det(rows)) / math.factorial(n)


def _det(rows) -> Fraction:
    m = [list(map(Fraction, r)) for r in rows]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, n):
            factor = m[r][col] / m[col][col]
            for c in range(col, n):
                m[r][c] -= factor * m[col][c]
    return det


def _simplex_monomial_integral(verts: Sequence[Point], alpha: Monomial,
                               measure: Fraction) -> Fraction:
    """Integral of x^alpha over a simplex of intrinsic dimension m.

    Uses int_simplex lambda^beta = measure * m! * beta! / (m + |beta|)!
    after expanding x = sum_j lambda_j w_j in barycentric coordinates.
    """
    m = len(verts) - 1
    terms: dict[tuple[int, ...], Fraction] = {tuple([0] * (m + 1)): Fraction(1)}
    for i, power in enumerate(alpha):
        for _ in range(power):
            new: dict[tuple[int, ...], Fraction] = {}
            for beta, coeff in terms.items():
                for j in range(m + 1):
                    wji = verts[j][i]
                    if wji == 0:
                        continue
                    nb = list(beta)
                    nb[j] += 1
                    key = tuple(nb)
                    new[key] = new.get(key, Fraction(0)) + coeff * wji
            terms = new
            if not terms:
                return Fraction(0)
    total_deg = sum(alpha)
    scale = measure * Fraction(math.factorial(m), math.factorial(m + total_deg))
    out = Fraction(0)
    for beta, coeff in terms.items():
        out += coeff * math.prod(math.factorial(b) for b in beta)
    return scale * out


def monomial_moment(poly: LabelledPolytope, alpha: Monomial) -> Fraction:
    """Exact interior moment integral of x^alpha over the polytope."""
    if len(alpha) != poly.dim:
        raise InvalidPolytopeError("monomial exponent has wrong dimension")
    total = Fraction(0)
    for simplex in triangulate(poly):
        vol = simplex_volume(simplex)
        if vol == 0:
            continue
        total += _simplex_monomial_integral(simplex, alpha, vol)
    return total


def volume(poly: LabelledPolytope) -> Fraction:
    return monomial_moment(poly, tuple([0] * poly.dim))


def polynomial_moment(poly: LabelledPolytope, coeffs: Polynomial) -> Fraction:
    return sum(
        (c * monomial_moment(poly, alpha) for alpha, c in coeffs.items()),
        Fraction(0),
    )


def facet_sigma_moment(poly: LabelledPolytope, facet_index: int,
                       alpha: Monomial) -> Fraction:
    """Moment of x^alpha over one facet against the label-scaled measure."""
    f = poly.facets[facet_index]
    fverts = [v for v in poly.vertices if f(v) == 0]
    if not fverts:
        raise InvalidPolytopeError("facet carries no vertices")
    n = poly.dim
    norm2 = sum(c * c for c in f.normal)
    total = Fraction(0)
    for simplex in _triangulate_face(poly, fverts, n - 1):
        base = simplex[0]
        rows = [
            [simplex[j + 1][i] - base[i] for i in range(n)]
            for j in range(n - 1)
        ]
        rows.append(list(f.normal))
        # sigma-measure of the facet simplex; n_i is orthogonal to the facet,
        # so the determinant factors as (Euclidean volume)*(n-1)!*||n_i||.
        measure = abs(_det(rows)) / (norm2 * math.factorial(n - 1))
        if measure == 0:
            continue
        total += _simplex_monomial_integral(simplex, alpha, measure)
    return total


def boundary_moment(poly: LabelledPolytope, alpha: Monomial) -> Fraction:
    """Moment of x^alpha over the whole boundary against dsigma."""
    return sum(
        (facet_sigma_moment(poly, i, alpha) for i in range(len(poly.facets))),
        Fraction(0),
    )


def boundary_polynomial_moment(poly: LabelledPolytope, coeffs: Polynomial) -> Fraction:
    return sum(
        (c * boundary_moment(poly, alpha) for alpha, c in coeffs.items()),
        Fraction(0),
    )

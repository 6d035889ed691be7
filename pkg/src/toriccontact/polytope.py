"""Labelled polytopes given by their defining affine functions.

A labelled polytope is the compact region ``{x : l_i(x) >= 0}`` cut out by
affine functions ``l_i(x) = <x, normal_i> + constant_i`` together with the
functions themselves (the labels carry geometric meaning, so redundant
facets are rejected rather than pruned).  All data is rational and every
decision here is exact.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence, Union

from . import intlinalg
from .errors import InvalidArgumentError, InvalidPolytopeError

Rat = Union[Fraction, int, str]


def frac(x: Rat) -> Fraction:
    """Coerce ints, Fractions and 'p/q' strings to Fraction."""
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


def frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


@dataclass(frozen=True)
class AffineFunction:
    """Affine label ``l(x) = <x, normal> + constant``.

    In the common convention ``l_i(x) = <x, n_i> - lambda_i`` the stored
    ``constant`` is ``-lambda_i``.
    """

    normal: tuple[Fraction, ...]
    constant: Fraction

    def __post_init__(self):
        object.__setattr__(self, "normal", tuple(frac(c) for c in self.normal))
        object.__setattr__(self, "constant", frac(self.constant))
        if all(c == 0 for c in self.normal):
            raise InvalidArgumentError("affine label must have a nonzero normal")

    def __call__(self, x: Sequence[Rat]) -> Fraction:
        return sum((n * frac(c) for n, c in zip(self.normal, x)), self.constant)

    def rescaled(self, r: Fraction) -> "AffineFunction":
        return AffineFunction(self.normal, r * self.constant)

    def as_vector(self) -> tuple[Fraction, ...]:
        """The label as a vector (normal..., constant) in Aff(A, R)."""
        return self.normal + (self.constant,)

    def to_json(self) -> dict:
        return {
            "normal": [frac_str(c) for c in self.normal],
            "constant": frac_str(self.constant),
        }

    @classmethod
    def from_json(cls, data: dict) -> "AffineFunction":
        return cls(tuple(frac(c) for c in data["normal"]), frac(data["constant"]))


@dataclass(frozen=True)
class CombinatorialType:
    """Vertex-facet incidence structure up to relabeling of both sides."""

    canonical: tuple[tuple[int, ...], ...]

    @classmethod
    def from_incidence(cls, vertex_facets: Sequence[frozenset[int]], num_facets: int):
        """Canonicalize by minimizing over facet permutations.

        Facets are first split into classes by an invariant (incident vertex
        count) and only permutations respecting the classes are tried; the
        vertex side is handled by sorting signatures, which is relabeling
        invariant for free.
        """
        counts = [0] * num_facets
        for vf in vertex_facets:
            for f in vf:
                counts[f] += 1
        classes: dict[int, list[int]] = {}
        for f in range(num_facets):
            classes.setdefault(counts[f], []).append(f)
        ordered_classes = [classes[c] for c in sorted(classes)]
        if math.prod(math.factorial(len(c)) for c in ordered_classes) > 500_000:
            raise InvalidArgumentError("polytope too large for canonicalization")
        best = None
        for perms in itertools.product(
            *(itertools.permutations(c) for c in ordered_classes)
        ):
            position = {}
            pos = 0
            for perm in perms:
                for f in perm:
                    position[f] = pos
                    pos += 1
            candidate = tuple(
                sorted(tuple(sorted(position[f] for f in vf)) for vf in vertex_facets)
            )
            if best is None or candidate < best:
                best = candidate
        return cls(best)


class LabelledPolytope:
    """Compact full-dimensional polytope with one affine label per facet."""

    def __init__(self, dim: int, facets: Iterable[AffineFunction]):
        self.dim = int(dim)
        self.facets = tuple(facets)
        if self.dim < 1:
            raise InvalidPolytopeError("dimension must be >= 1")
        for f in self.facets:
            if len(f.normal) != self.dim:
                raise InvalidPolytopeError("facet normal has wrong dimension")
        if len(self.facets) < self.dim + 1:
            raise InvalidPolytopeError("too few facets for a compact polytope")
        self._validate()

    # -- construction-time validation -------------------------------------

    def _validate(self):
        normals = [f.normal for f in self.facets]
        if intlinalg.rational_rank(normals) < self.dim:
            raise InvalidPolytopeError("normals do not span; region is unbounded")
        if self._has_recession_ray(normals):
            raise InvalidPolytopeError("region is unbounded")
        verts = self.vertices
        if not verts:
            raise InvalidPolytopeError("region is empty")
        if _affine_rank(verts) < self.dim:
            raise InvalidPolytopeError("region has empty interior")
        for i in range(len(self.facets)):
            on_facet = [v for v in verts if self.facets[i](v) == 0]
            if _affine_rank(on_facet) != self.dim - 1:
                raise InvalidPolytopeError(f"facet {i} is redundant")

    def _has_recession_ray(self, normals) -> bool:
        n = self.dim
        for subset in itertools.combinations(range(len(normals)), n - 1):
            sub = [normals[i] for i in subset]
            if sub and intlinalg.rational_rank(sub) != n - 1:
                continue
            kern = intlinalg.rational_kernel_basis(sub if sub else [[Fraction(0)] * n])
            kern = [v for v in kern if any(c != 0 for c in v)]
            if len(kern) != 1:
                continue
            g = kern[0]
            for cand in (g, tuple(-c for c in g)):
                if all(
                    sum(a * b for a, b in zip(row, cand)) >= 0 for row in normals
                ):
                    return True
        return False

    # -- derived data ------------------------------------------------------

    @cached_property
    def vertices(self) -> tuple[tuple[Fraction, ...], ...]:
        """Exact vertex set, sorted for determinism."""
        n, d = self.dim, len(self.facets)
        found = set()
        for subset in itertools.combinations(range(d), n):
            rows = [self.facets[i].normal for i in subset]
            rhs = [-self.facets[i].constant for i in subset]
            if intlinalg.rational_rank(rows) < n:
                continue
            x = intlinalg.solve_exact(rows, rhs)
            if x is None:
                continue
            if all(f(x) >= 0 for f in self.facets):
                found.add(x)
        return tuple(sorted(found))

    @cached_property
    def vertex_facet_incidence(self) -> tuple[frozenset[int], ...]:
        return tuple(
            frozenset(i for i, f in enumerate(self.facets) if f(v) == 0)
            for v in self.vertices
        )

    def combinatorial_type(self) -> CombinatorialType:
        return CombinatorialType.from_incidence(
            self.vertex_facet_incidence, len(self.facets)
        )

    def is_simplex(self) -> bool:
        return len(self.facets) == self.dim + 1

    def interior_point(self) -> tuple[Fraction, ...]:
        """Vertex centroid (interior because the polytope is full dimensional)."""
        k = len(self.vertices)
        return tuple(sum(v[j] for v in self.vertices) / k for j in range(self.dim))

    # -- structure decisions -------------------------------------------------

    def product_split(self) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
        """Partition of facet indices splitting every normal dependency.

        Returns ``None`` when no such partition exists (the polytope is not
        affinely a product).  The partition is computed as a separator of the
        linear matroid of the normals: ``I`` splits every rational dependency
        iff ``rank(I) + rank(I^c) = rank(all)``.
        """
        normals = [f.normal for f in self.facets]
        comps = _matroid_components(normals)
        if len(comps) < 2:
            return None
        first = tuple(sorted(comps[0]))
        rest = tuple(sorted(set(range(len(normals))) - set(first)))
        return first, rest

    def is_rational(self) -> bool:
        """Normals lie in a common lattice: the integer kernel of
        ``x -> sum x_i n_i`` must have rank >= d - dim(Aff) + 1."""
        d = len(self.facets)
        k = self.dim + 1
        denom = math.lcm(
            *(c.denominator for f in self.facets for c in f.normal)
        )
        cols = [[int(f.normal[j] * denom) for f in self.facets] for j in range(self.dim)]
        kern = intlinalg.integer_kernel_basis(cols)
        return kern.rank >= d - k + 1

    def is_characteristic(self) -> "CharacteristicResult":
        """Decide whether the labels span a lattice with a good cone over P."""
        from . import cone as cone_mod

        vecs = [f.as_vector() for f in self.facets]
        k = self.dim + 1
        denom = math.lcm(*(c.denominator for v in vecs for c in v))
        ints = [[int(c * denom) for c in v] for v in vecs]
        basis = intlinalg.lattice_row_basis(ints)
        if len(basis) != k:
            # Labels span a lower-rank module: cannot be characteristic.
            return CharacteristicResult(False, None, None)
        coords = []
        for w in ints:
            z = intlinalg.solve_exact(
                [[basis[j][a] for j in range(k)] for a in range(k)], w
            )
            coords.append(tuple(int(c) for c in z))
        for z in coords:
            if not intlinalg.is_primitive(z):
                return CharacteristicResult(False, None, None)
        candidate = cone_mod.Cone(k, tuple(coords))
        result = cone_mod.is_good(candidate)
        if not result.good:
            return CharacteristicResult(False, None, None)
        # The canonical Reeb vector pairs to 1 with the embedded copy of P:
        # it is the constant function 1 in coordinates on the label lattice.
        one = [Fraction(0)] * (k - 1) + [Fraction(denom)]
        b = intlinalg.solve_exact(
            [[basis[j][a] for j in range(k)] for a in range(k)], one
        )
        return CharacteristicResult(True, candidate, tuple(b))

    # -- transformations ---------------------------------------------------

    def rescale(self, r: Rat) -> "LabelledPolytope":
        r = frac(r)
        if r <= 0:
            raise InvalidArgumentError("rescale factor must be positive")
        return LabelledPolytope(self.dim, (f.rescaled(r) for f in self.facets))

    # -- equality / serialization -------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LabelledPolytope)
            and self.dim == other.dim
            and self.facets == other.facets
        )

    def __hash__(self):
        return hash((self.dim, self.facets))

    def __repr__(self):
        return f"LabelledPolytope(dim={self.dim}, facets={len(self.facets)})"

    def to_json(self) -> dict:
        return {"dim": self.dim, "facets": [f.to_json() for f in self.facets]}

    @classmethod
    def from_json(cls, data: dict) -> "LabelledPolytope":
        return cls(data["dim"], [AffineFunction.from_json(f) for f in data["facets"]])


@dataclass(frozen=True)
class CharacteristicResult:
    """Outcome of the characteristic-polytope test, with witness data."""

    ok: bool
    cone: Optional[object]  # cone.Cone when ok
    reeb: Optional[tuple[Fraction, ...]]  # canonical slice direction

    def __bool__(self) -> bool:
        return self.ok


def _affine_rank(points) -> int:
    if not points:
        return -1
    base = points[0]
    diffs = [[c - b for c, b in zip(p, base)] for p in points[1:]]
    if not diffs:
        return 0
    return intlinalg.rational_rank(diffs)


def _matroid_components(vectors) -> list[set[int]]:
    """Connected components of the linear matroid on ``vectors``.

    Components are the transitive closure of the fundamental circuits with
    respect to one maximal independent subset: each dependent vector is
    expanded in the basis and joined to every basis vector it uses.
    """
    n = len(vectors)
    basis_idx: list[int] = []
    for i in range(n):
        chosen = [vectors[j] for j in basis_idx] + [vectors[i]]
        if intlinalg.rational_rank(chosen) > len(basis_idx):
            basis_idx.append(i)

    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a: int, b: int):
        parent[find(a)] = find(b)

    dim = len(vectors[0]) if vectors else 0
    matrix = [[vectors[b][j] for b in basis_idx] for j in range(dim)]
    for e in range(n):
        if e in basis_idx:
            continue
        coeffs = intlinalg.solve_exact(matrix, list(vectors[e]))
        for b, c in zip(basis_idx, coeffs):
            if c != 0:
                union(e, b)

    groups: dict[int, set[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), set()).add(i)
    return sorted(groups.values(), key=min)


# -- convenience constructors used across tests and the CLI ------------------


def segment(labels: Sequence[Rat] = (1, 1)) -> LabelledPolytope:
    """The unit segment with labels ``m1*x`` and ``m2*(1-x)``."""
    m1, m2 = (frac(x) for x in labels)
    return LabelledPolytope(
        1,
        [
            AffineFunction((m1,), Fraction(0)),
            AffineFunction((-m2,), m2),
        ],
    )


def unit_box(dim: int) -> LabelledPolytope:
    facets = []
    for j in range(dim):
        e = [Fraction(0)] * dim
        e[j] = Fraction(1)
        facets.append(AffineFunction(tuple(e), Fraction(0)))
        facets.append(AffineFunction(tuple(-c for c in e), Fraction(1)))
    return LabelledPolytope(dim, facets)


def standard_simplex(dim: int) -> LabelledPolytope:
    facets = []
    for j in range(dim):
        e = [Fraction(0)] * dim
        e[j] = Fraction(1)
        facets.append(AffineFunction(tuple(e), Fraction(0)))
    facets.append(AffineFunction((Fraction(-1),) * dim, Fraction(1)))
    return LabelledPolytope(dim, facets)


def product(p1: LabelledPolytope, p2: LabelledPolytope) -> LabelledPolytope:
    """Product polytope with factor-1 coordinates first and labels concatenated."""
    n1, n2 = p1.dim, p2.dim
    zeros1 = (Fraction(0),) * n2
    zeros2 = (Fraction(0),) * n1
    facets = [
        AffineFunction(f.normal + zeros1, f.constant) for f in p1.facets
    ] + [AffineFunction(zeros2 + f.normal, f.constant) for f in p2.facets]
    return LabelledPolytope(n1 + n2, facets)

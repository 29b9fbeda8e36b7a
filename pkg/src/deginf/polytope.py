"""Rational polytopes and the subdegree of a polytope.

For a polytope ``P`` the function ``f -> inf{r : supp(f) in rP}`` equals the
maximum over facets ``Q`` of ``<w_Q, a> / c_Q``, where ``w_Q`` is the
primitive outward normal and ``c_Q`` the facet offset.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor
from typing import Sequence

from .degree import NEG_INF, Subdegree, WeightedDegree
from .errors import (DegeneratePolytope, DomainMismatch, InputError, OriginNotInterior,
                     Singular, Unbounded)
from .exact import RationalMatrix, as_fraction, det2, dot, matrix_invert, primitive_vector
from .lp import LE, maximize_coordinate, solve_lp
from .poly import LAURENT, POLYNOMIAL, LaurentPolynomial


class OriginMode(enum.Enum):
    INTERIOR = "INTERIOR"
    VERTEX_ON_AXES = "VERTEX_ON_AXES"


@dataclass(frozen=True, order=True)
class Facet:
    """Half-space ``<normal, x> <= c`` with a primitive integer normal."""

    normal: tuple
    c: Fraction

    def __post_init__(self):
        object.__setattr__(self, "normal", tuple(int(a) for a in self.normal))
        object.__setattr__(self, "c", as_fraction(self.c))

    @classmethod
    def from_rational(cls, normal: Sequence, c) -> "Facet":
        prim, scale = primitive_vector(normal)
        return cls(prim, as_fraction(c) / scale)

    def value(self, x) -> Fraction:
        return dot(self.normal, x)

    def contains(self, x, scale=1) -> bool:
        return self.value(x) <= self.c * scale


def _convex_hull_2d(points):
    pts = sorted(set(points))
    if len(pts) < 3:
        return pts

    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and det2(
                    (out[-1][0] - out[-2][0], out[-1][1] - out[-2][1]),
                    (p[0] - out[-2][0], p[1] - out[-2][1])) <= 0:
                out.pop()
            out.append(p)
        return out

    lower, upper = half(pts), half(reversed(pts))
    return lower[:-1] + upper[:-1]  # counter-clockwise, no collinear points


def _affine_rank(points) -> int:
    p0 = points[0]
    diffs = [[a - b for a, b in zip(p, p0)] for p in points[1:]]
    rank, rows = 0, [list(r) for r in diffs]
    ncols = len(p0)
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col] / rows[rank][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def facets_from_vertices(vertices: Sequence[Sequence]) -> list[Facet]:
    """H-representation of the convex hull of points in dimension 2 or 3.

    Exact throughout: a sorted-hull edge walk in the plane, and in space an
    exhaustive scan of point triples keeping the supporting planes.
    """
    pts = [tuple(as_fraction(x) for x in p) for p in vertices]
    if not pts:
        raise DegeneratePolytope("no points")
    n = len(pts[0])
    if n not in (2, 3):
        raise InputError(f"facet enumeration is implemented for n = 2, 3 only (got {n})")
    if len(set(pts)) < n + 1 or _affine_rank(pts) < n:
        raise DegeneratePolytope("points do not span the ambient space")
    facets = set()
    if n == 2:
        hull = _convex_hull_2d(pts)
        for p, q in zip(hull, hull[1:] + hull[:1]):
            normal = (q[1] - p[1], p[0] - q[0])
            facets.add(Facet.from_rational(normal, dot(normal, p)))
    else:
        uniq = sorted(set(pts))
        for p, q, r in itertools.combinations(uniq, 3):
            u = [a - b for a, b in zip(q, p)]
            v = [a - b for a, b in zip(r, p)]
            normal = (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])
            if not any(normal):
                continue
            c = dot(normal, p)
            side = [dot(normal, x) - c for x in uniq]
            if all(s <= 0 for s in side):
                facets.add(Facet.from_rational(normal, c))
            elif all(s >= 0 for s in side):
                facets.add(Facet.from_rational([-a for a in normal], -c))
    return sorted(facets)


def vertices_from_facets(facets: Sequence[Facet], n: int) -> list[tuple]:
    """Vertices as the feasible intersection points of ``n`` facet hyperplanes."""
    verts = set()
    for combo in itertools.combinations(facets, n):
        M = RationalMatrix([f.normal for f in combo])
        try:
            inv, _ = matrix_invert(M)
        except Singular:
            continue
        x = inv @ [f.c for f in combo]
        if all(f.contains(x) for f in facets):
            verts.add(tuple(x))
    return sorted(verts)


class RationalPolytope:
    """Full-dimensional rational polytope given by vertices, facets, or both."""

    def __init__(self, n: int, vertices=None, facets=None, mode=OriginMode.INTERIOR):
        self.n = int(n)
        self.mode = OriginMode(mode) if not isinstance(mode, OriginMode) else mode
        if vertices is None and facets is None:
            raise InputError("a polytope needs vertices or facets")
        given_facets = None
        if facets is not None:
            given_facets = sorted(set(f if isinstance(f, Facet) else Facet.from_rational(*f)
                                      for f in facets))
        self._bounded = True
        if vertices is not None:
            pts = [tuple(as_fraction(x) for x in v) for v in vertices]
            if any(len(p) != self.n for p in pts):
                raise InputError("vertex of the wrong dimension")
            if self.n in (2, 3):
                self.facets = facets_from_vertices(pts)
                if given_facets is not None and given_facets != self.facets:
                    raise InputError("vertex and facet descriptions disagree")
                self.vertices = vertices_from_facets(self.facets, self.n)
            else:
                if given_facets is None:
                    raise InputError("for n > 3 facets must be supplied")
                self.facets = given_facets
                self.vertices = sorted(set(pts))
                for f in self.facets:
                    vals = [f.value(p) for p in self.vertices]
                    if max(vals) != f.c:
                        raise InputError("vertex and facet descriptions disagree")
        else:
            self.facets = given_facets
            self._bounded = self._check_bounded()
            self.vertices = vertices_from_facets(self.facets, self.n) if (
                self._bounded and self.n <= 3) else None
        self._validate_mode()

    def _check_bounded(self) -> bool:
        cons = [(f.normal, LE, f.c) for f in self.facets]
        for i in range(self.n):
            for s in (1, -1):
                direction = [s * int(j == i) for j in range(self.n)]
                res = maximize_coordinate(self.n, cons, direction)
                if res.status == "unbounded":
                    return False
                if res.status == "infeasible":
                    raise DegeneratePolytope("empty polytope")
        return True

    def _validate_mode(self):
        if self.mode is OriginMode.INTERIOR:
            bad = [f for f in self.facets if f.c <= 0]
            if bad:
                raise OriginNotInterior(f"origin is not interior (facet {bad[0]})")
        else:
            if self.n != 2:
                raise InputError("VERTEX_ON_AXES polytopes are planar")
            if (-1, 0) not in [f.normal for f in self.facets if f.c == 0] or \
                    (0, -1) not in [f.normal for f in self.facets if f.c == 0]:
                raise InputError("VERTEX_ON_AXES needs the origin as a vertex with edges on both axes")

    @property
    def bounded(self) -> bool:
        return self._bounded

    def scaled(self, k) -> "RationalPolytope":
        k = as_fraction(k)
        if k <= 0:
            raise InputError("scale factor must be positive")
        return RationalPolytope(self.n, facets=[Facet(f.normal, f.c * k) for f in self.facets],
                                mode=self.mode)

    def contains(self, x, scale=1) -> bool:
        return all(f.contains(x, scale) for f in self.facets)

    def __repr__(self):
        return f"RationalPolytope(n={self.n}, mode={self.mode.value}, facets={len(self.facets)})"


def subdegree_from_polytope(P: RationalPolytope) -> Subdegree:
    """One weighted degree ``normal / c`` per facet with ``c > 0``.

    Origin-interior polytopes live on the Laurent ring; polygons with a vertex
    at the origin on the polynomial ring, their axis edges contributing nothing.
    """
    if P.mode is OriginMode.INTERIOR:
        bad = [f for f in P.facets if f.c <= 0]
        if bad:
            raise OriginNotInterior(f"facet {bad[0]} has non-positive offset")
        domain = LAURENT(P.n)
    else:
        domain = POLYNOMIAL(P.n)
    parts = tuple(WeightedDegree(domain, tuple(Fraction(a) / f.c for a in f.normal))
                  for f in P.facets if f.c > 0)
    return Subdegree(domain, parts)


def polytope_domain(P: RationalPolytope):
    return LAURENT(P.n) if P.mode is OriginMode.INTERIOR else POLYNOMIAL(P.n)


def eval_by_scaling(P: RationalPolytope, f: LaurentPolynomial):
    """``inf{r >= 0 : supp(f) in rP}`` straight from the inequalities."""
    if f.domain != polytope_domain(P):
        raise DomainMismatch(f"polynomial on {f.domain} for a polytope on {polytope_domain(P)}")
    if f.is_zero():
        return NEG_INF
    best = Fraction(0)
    for a in f.support:
        for fc in P.facets:
            v = fc.value(a)
            if fc.c > 0:
                best = max(best, v / fc.c)
            elif v > 0:
                raise InputError(f"exponent {a} lies in no dilate of the polytope")
    return best


def gauge_by_vertices(P: RationalPolytope, a: Sequence) -> Fraction:
    """Least ``r`` with ``a`` in ``rP``, as an LP over the vertex description.

    Valid because the origin lies in ``P``: ``a`` is in ``rP`` iff it is a
    nonnegative combination of vertices with total weight at most ``r``.
    """
    if P.vertices is None:
        raise InputError("vertex description unavailable")
    V = P.vertices
    cons = [([v[i] for v in V], "==", a[i]) for i in range(P.n)]
    res = solve_lp(len(V), cons, [1] * len(V))
    if res.status != "optimal":
        raise InputError(f"point {a} is outside every dilate")
    return res.value


def _bounding_box(P: RationalPolytope, d: int) -> list[tuple[int, int]]:
    if P.vertices is not None:
        return [(floor(min(v[i] for v in P.vertices) * d), ceil(max(v[i] for v in P.vertices) * d))
                for i in range(P.n)]
    cons = [(f.normal, LE, f.c * d) for f in P.facets]
    box = []
    for i in range(P.n):
        e = [int(j == i) for j in range(P.n)]
        hi = maximize_coordinate(P.n, cons, e)
        lo = maximize_coordinate(P.n, cons, [-x for x in e])
        if "unbounded" in (hi.status, lo.status):
            raise Unbounded(f"polytope is unbounded along coordinate {i + 1}")
        box.append((floor(-lo.value), ceil(hi.value)))
    return box


def lattice_points_scaled(P: RationalPolytope, d: int) -> list[tuple]:
    """Integer points of ``dP`` by a bounding-box scan."""
    if d < 0:
        raise InputError("dilation must be nonnegative")
    if not P.bounded:
        raise Unbounded("polytope is unbounded")
    if d == 0:
        return [(0,) * P.n]
    box = _bounding_box(P, d)
    pts = []
    for a in itertools.product(*(range(lo, hi + 1) for lo, hi in box)):
        if P.contains(a, d):
            pts.append(a)
    return pts


@dataclass(frozen=True)
class SemigroupGenerators:
    generators: tuple  # ((exponent, degree), ...); the element (0, 1) is implicit
    saturated: bool

    @property
    def max_degree(self) -> int:
        return max((d for _, d in self.generators), default=0)


def semigroup_generators(P: RationalPolytope, d_max: int) -> SemigroupGenerators:
    """Generators of ``{(a, d) : a in dP}`` up to degree ``d_max``.

    ``(a, d)`` is a generator iff it is not a sum of two nonzero elements of
    lower degree. The degree-one element at the origin (the grading element)
    is always present and is not listed. ``saturated`` means degree
    ``d_max`` contributed nothing new.
    """
    if d_max < 1:
        raise InputError("d_max must be positive")
    layers = [set(lattice_points_scaled(P, d)) for d in range(d_max + 1)]
    gens = []
    new_at_top = False
    origin = (0,) * P.n
    for d in range(1, d_max + 1):
        reducible = set()
        for d1 in range(1, d // 2 + 1):
            for a in layers[d1]:
                for b in layers[d - d1]:
                    reducible.add(tuple(x + y for x, y in zip(a, b)))
        fresh = sorted(layers[d] - reducible)
        if d == 1:
            fresh = [a for a in fresh if a != origin]
        gens.extend((a, d) for a in fresh)
        if d == d_max:
            new_at_top = bool(fresh)
    return SemigroupGenerators(tuple(gens), not new_at_top)

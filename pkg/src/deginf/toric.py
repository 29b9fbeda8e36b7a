"""Intersection theory of toric completions of the affine plane.

A polygon with a vertex at the origin, two edges on the axes and the
remaining edges of negative slope gives a toric surface whose curves at
infinity correspond to those remaining edges. Their intersection matrix is
computed two ways: from the max-ratio (linking) matrix, and from the
standard determinant formulas on the normal fan.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .degree import Subdegree, WeightedDegree
from .errors import (InputError, InvalidFan, InvalidPolygon, InvariantViolation, NotDominant,
                     NotPositive, NotProjective, Singular)
from .exact import RationalMatrix, as_fraction, det2, matrix_invert, primitive_vector
from .lp import closed_orthant_feasible, strict_cone_feasible
from .poly import POLYNOMIAL, Mode
from .polytope import Facet, OriginMode, RationalPolytope, subdegree_from_polytope
from .structure import divisor_at_infinity


def _slope_order(u, v) -> int:
    # decreasing v2/v1 for positive vectors
    return -1 if u[1] * v[0] > v[1] * u[0] else (1 if u[1] * v[0] < v[1] * u[0] else 0)


class Polygon2:
    """Polygon with the origin as a vertex, edges on both axes, other edges of negative slope."""

    def __init__(self, polytope: RationalPolytope):
        if polytope.mode is not OriginMode.VERTEX_ON_AXES or polytope.n != 2:
            raise InvalidPolygon("expected a planar VERTEX_ON_AXES polytope")
        others = [f for f in polytope.facets if f.c != 0]
        for f in others:
            if not all(a > 0 for a in f.normal):
                raise InvalidPolygon(f"edge with normal {f.normal} does not have negative slope")
        if not others:
            raise InvalidPolygon("polygon has no edge off the axes")
        self.polytope = polytope
        others.sort(key=functools.cmp_to_key(lambda a, b: _slope_order(a.normal, b.normal)))
        self.edges: tuple[Facet, ...] = tuple(others)

    @property
    def normals(self) -> list[tuple]:
        return [f.normal for f in self.edges]

    @property
    def offsets(self) -> list[Fraction]:
        return [f.c for f in self.edges]

    @classmethod
    def from_vertices(cls, vertices) -> "Polygon2":
        return cls(RationalPolytope(2, vertices=vertices, mode=OriginMode.VERTEX_ON_AXES))

    @classmethod
    def from_normals(cls, normals: Sequence, lengths: Optional[Sequence] = None) -> "Polygon2":
        """Build the polygon whose non-axis edges have the given normals.

        ``lengths[j]`` scales the edge direction ``(v2, -v1)`` of edge ``j``;
        the last edge is sized to land on the x-axis.
        """
        vs = [tuple(int(a) for a in v) for v in normals]
        for v in vs:
            if len(v) != 2 or not all(a > 0 for a in v):
                raise InvalidPolygon(f"normal {v} is not strictly positive")
        vs = [primitive_vector(v)[0] for v in vs]
        if len(set(vs)) != len(vs):
            raise InvalidPolygon("normals must be pairwise non-proportional")
        vs.sort(key=functools.cmp_to_key(_slope_order))
        k = len(vs)
        lengths = [Fraction(1)] * k if lengths is None else [as_fraction(t) for t in lengths]
        if len(lengths) != k or any(t <= 0 for t in lengths):
            raise InputError("need one positive length per edge")
        drop = sum(t * v[0] for t, v in zip(lengths, vs))
        p = (Fraction(0), drop)
        verts = [(Fraction(0), Fraction(0)), p]
        for t, v in zip(lengths, vs):
            p = (p[0] + t * v[1], p[1] - t * v[0])
            verts.append(p)
        return cls.from_vertices(verts)

    def __repr__(self):
        return f"Polygon2(normals={self.normals})"


def polygon_normals(P: Polygon2) -> list[tuple]:
    return P.normals


def _check_vectors(vs) -> list[tuple]:
    vs = [tuple(as_fraction(a) for a in v) for v in vs]
    if not vs:
        raise InputError("need at least one vector")
    n = len(vs[0])
    for v in vs:
        if len(v) != n:
            raise InputError("vectors of different lengths")
        if not all(a > 0 for a in v):
            raise NotPositive(f"vector {v} has a non-positive entry")
    prims = [primitive_vector(v)[0] for v in vs]
    if len(set(prims)) != len(prims):
        raise InputError("vectors must be pairwise non-proportional")
    return vs


def linking_matrix(vs: Sequence[Sequence]) -> RationalMatrix:
    """Max-ratio matrix ``l_ij = max_m v_jm / v_im`` (any dimension)."""
    vs = _check_vectors(vs)
    return RationalMatrix([[max(b / a for a, b in zip(vi, vj)) for vj in vs] for vi in vs])


def self_intersection_diagonal(vs) -> RationalMatrix:
    return RationalMatrix.diagonal([Fraction(1) / (v[0] * v[1]) for v in vs])


@dataclass(frozen=True)
class LinkingIntersection:
    L: RationalMatrix
    D: RationalMatrix
    I: Optional[RationalMatrix]
    detL: Fraction


def intersection_via_linking(vs, linking=linking_matrix) -> LinkingIntersection:
    """``I = L^{-1} D`` with ``D = diag(1/(v_j1 v_j2))``.

    ``I`` is ``None`` (and ``detL == 0``) if the linking matrix is singular.
    """
    vs = _check_vectors(vs)
    if len(vs[0]) != 2:
        raise InputError("intersection numbers are defined for planar normals")
    L = linking(vs)
    D = self_intersection_diagonal(vs)
    try:
        inv, det = matrix_invert(L)
    except Singular:
        return LinkingIntersection(L, D, None, Fraction(0))
    return LinkingIntersection(L, D, inv @ D, det)


def _angle_key(v):
    # half-plane index then counter-clockwise order within it
    upper = v[1] > 0 or (v[1] == 0 and v[0] > 0)
    return 0 if upper else 1


def _ccw_cmp(u, v) -> int:
    hu, hv = _angle_key(u), _angle_key(v)
    if hu != hv:
        return -1 if hu < hv else 1
    c = det2(u, v)
    return -1 if c > 0 else (1 if c < 0 else 0)


@dataclass(frozen=True)
class Fan2:
    """Complete planar fan of primitive rays in counter-clockwise order."""

    rays: tuple

    def __post_init__(self):
        rays = [tuple(int(a) for a in r) for r in self.rays]
        if len(rays) < 3:
            raise InvalidFan("a complete planar fan needs at least three rays")
        for r in rays:
            if len(r) != 2 or primitive_vector(r)[0] != r:
                raise InvalidFan(f"ray {r} is not a primitive planar vector")
        rays.sort(key=functools.cmp_to_key(_ccw_cmp))
        for a, b in zip(rays, rays[1:] + rays[:1]):
            if det2(a, b) <= 0:
                raise InvalidFan(f"consecutive rays {a}, {b} are not positively oriented")
        object.__setattr__(self, "rays", tuple(rays))

    @classmethod
    def of_polygon(cls, P: Polygon2) -> "Fan2":
        return cls(tuple(P.normals) + ((-1, 0), (0, -1)))

    def neighbours(self, ray) -> tuple[tuple, tuple]:
        i = self.rays.index(tuple(ray))
        k = len(self.rays)
        return self.rays[(i - 1) % k], self.rays[(i + 1) % k]


def intersection_via_fan(fan: Fan2, curve_rays: Sequence) -> RationalMatrix:
    """Rational intersection numbers of the torus-invariant curves of ``curve_rays``.

    Self-intersection of the curve of ``u`` with neighbours ``p``, ``q``:
    ``-det(p, q) / (det(p, u) det(u, q))``; adjacent curves meet in
    ``1 / det(u, u')``; non-adjacent ones are disjoint.
    """
    curve_rays = [tuple(int(a) for a in r) for r in curve_rays]
    for r in curve_rays:
        if r not in fan.rays:
            raise InvalidFan(f"curve ray {r} is not a ray of the fan")
    k = len(fan.rays)
    pos = {r: i for i, r in enumerate(fan.rays)}
    rows = []
    for u in curve_rays:
        p, q = fan.neighbours(u)
        row = []
        for w in curve_rays:
            if w == u:
                row.append(Fraction(-det2(p, q), det2(p, u) * det2(u, q)))
            elif (pos[w] - pos[u]) % k == 1:
                row.append(Fraction(1, det2(u, w)))
            elif (pos[u] - pos[w]) % k == 1:
                row.append(Fraction(1, det2(w, u)))
            else:
                row.append(Fraction(0))
        rows.append(row)
    return RationalMatrix(rows)


@dataclass(frozen=True)
class IntersectionReport:
    normals: tuple
    L: RationalMatrix
    D: RationalMatrix
    I_linking: Optional[RationalMatrix]
    I_fan: RationalMatrix
    detL: Fraction
    agree: bool
    identity_holds: bool  # L @ I_fan == D


def intersection_report(P: Polygon2, linking=linking_matrix) -> IntersectionReport:
    vs = P.normals
    li = intersection_via_linking(vs, linking)
    I_fan = intersection_via_fan(Fan2.of_polygon(P), vs)
    agree = li.I is not None and li.I == I_fan
    return IntersectionReport(tuple(vs), li.L, li.D, li.I, I_fan, li.detL, agree,
                              li.L @ I_fan == li.D)


# ------------------------------------------------------------- linking at infinity


def _parts(delta) -> list[WeightedDegree]:
    if isinstance(delta, WeightedDegree):
        return [delta]
    if isinstance(delta, Subdegree):
        return list(delta.parts)
    raise InputError("linking numbers need a weighted degree or a subdegree")


def _candidate_rays(delta) -> list[tuple[int, int]]:
    """Rays bounding the cones on which ``delta`` is linear, plus the domain boundary."""
    mode = delta.domain.mode
    rays = {(1, 0), (0, 1)} if mode is Mode.POLYNOMIAL else {(1, 0), (0, 1), (-1, 0), (0, -1)}
    parts = _parts(delta)
    for a, b in itertools.combinations(parts, 2):
        d = [x - y for x, y in zip(a.weight, b.weight)]
        if not any(d):
            continue
        r, _ = primitive_vector((-d[1], d[0]))
        for s in (r, (-r[0], -r[1])):
            if mode is Mode.LAURENT or (s[0] >= 0 and s[1] >= 0):
                rays.add(s)
    return sorted(rays)


def _apply(M, a):
    return tuple(sum(M[i][j] * a[j] for j in range(len(a))) for i in range(len(M)))


def linking_at_infinity_2d(delta, pole: WeightedDegree, map_matrix=((1, 0), (0, 1)),
                           return_ray: bool = False):
    """Exact ``sup pole(M a) / delta(a)`` over nonzero lattice points ``a`` of the domain.

    ``delta`` is piecewise linear, so the domain splits into cones on which
    the ratio is a quotient of linear forms; such a quotient is extremal on
    the bounding rays of each cone, which are all enumerated.
    """
    if delta.domain.n != 2:
        raise InputError("exact linking numbers are implemented for n = 2")
    M = [[int(x) for x in row] for row in map_matrix]
    if len(M) != 2 or any(len(r) != 2 for r in M):
        raise InputError("map matrix must be 2x2")
    if det2(M[0], M[1]) == 0:
        raise NotDominant("map matrix is singular")
    if len(pole.weight) != 2:
        raise InputError("pole must be a planar weighted degree")
    best, best_ray = None, None
    for r in _candidate_rays(delta):
        dv = max(p.on_exponent(r) for p in _parts(delta))
        if dv <= 0:
            raise NotProjective(f"delta is not positive at exponent {r}")
        ratio = pole.on_exponent(_apply(M, r)) / dv
        if best is None or ratio > best:
            best, best_ray = ratio, r
    return (best, best_ray) if return_ray else best


def linking_at_infinity_sampled(delta, pole: WeightedDegree, map_matrix, radius: int = 20):
    """Lower bound for the linking number in any dimension by lattice sampling.

    Approximate: only exponents with entries in ``[-radius, radius]`` (or
    ``[0, radius]``) are examined.
    """
    n = delta.domain.n
    lo = 0 if delta.domain.mode is Mode.POLYNOMIAL else -radius
    M = [[int(x) for x in row] for row in map_matrix]
    parts = _parts(delta)
    best = None
    for a in itertools.product(range(lo, radius + 1), repeat=n):
        if not any(a):
            continue
        dv = max(p.on_exponent(a) for p in parts)
        if dv <= 0:
            raise NotProjective(f"delta is not positive at exponent {a}")
        ratio = pole.on_exponent(_apply(M, a)) / dv
        if best is None or ratio > best:
            best = ratio
    return best


# ----------------------------------------------------------------- nef cone


@dataclass(frozen=True)
class NefResult:
    nef: bool
    ample: bool
    intersections: tuple  # (I m)_i
    witnesses: tuple  # per i: exponent reaching the closed inequalities, or None
    strict_witnesses: tuple  # per i: exponent with strict inequalities, or None


def nef_membership(vs, m) -> NefResult:
    """Nefness and ampleness of ``sum m_i C_i`` by two independent routes.

    LP route: for each ``i`` look for ``a`` in the orthant, ``a != 0``, with
    ``<v_i, a>/m_i >= <v_j, a>/m_j`` for all ``j`` (strict for ampleness).
    Intersection route: signs of ``I m`` with ``I`` from the linking matrix.
    A disagreement raises :class:`InvariantViolation`.
    """
    vs = _check_vectors(vs)
    m = [as_fraction(x) for x in m]
    if len(m) != len(vs) or any(x <= 0 for x in m):
        raise InputError("need one positive multiplicity per vector")
    witnesses, strict = [], []
    for i, (vi, mi) in enumerate(zip(vs, m)):
        rows = [tuple(a / mi - b / mj for a, b in zip(vi, vj))
                for j, (vj, mj) in enumerate(zip(vs, m)) if j != i]
        witnesses.append(closed_orthant_feasible(rows, 2))
        strict.append(strict_cone_feasible(rows, POLYNOMIAL(2)))
    lp_nef = all(w is not None for w in witnesses)
    lp_ample = all(w is not None for w in strict)

    li = intersection_via_linking(vs)
    if li.I is None:
        raise InvariantViolation(f"linking matrix of {vs} is singular")
    im = li.I @ m
    int_nef = all(x >= 0 for x in im)
    int_ample = all(x > 0 for x in im)
    if (lp_nef, lp_ample) != (int_nef, int_ample):
        raise InvariantViolation(
            f"nef routes disagree for {vs}, m={m}: LP ({lp_nef}, {lp_ample}) "
            f"vs intersections ({int_nef}, {int_ample})")
    return NefResult(lp_nef, lp_ample, tuple(im), tuple(witnesses), tuple(strict))


def ampleness_at_infinity(P: Polygon2) -> bool:
    """Whether the divisor at infinity of the polygon's subdegree is ample."""
    return divisor_multiplicities(P)[1].ample


def divisor_multiplicities(P: Polygon2) -> tuple[list[Fraction], NefResult]:
    s = subdegree_from_polytope(P.polytope)
    div = divisor_at_infinity(s)
    by_normal = {primitive_vector(c.weight)[0]: c.coefficient for c in div.components}
    m = [by_normal[v] for v in P.normals]
    return m, nef_membership(P.normals, m)

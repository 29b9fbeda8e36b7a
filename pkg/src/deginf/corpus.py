"""Reproducible random instances for the property corpus and the tests.

Every generator takes a :class:`random.Random`; callers derive one per
instance from a master seed with :func:`instance_rng`, so results do not
depend on evaluation order.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .conjecture import splitmix64
from .degree import random_polynomial
from .errors import DegeneratePolytope, OriginNotInterior
from .exact import primitive_vector
from .polytope import RationalPolytope
from .toric import Polygon2


def instance_rng(seed: int, stream: int, index: int) -> random.Random:
    return random.Random(splitmix64(splitmix64(seed, stream), index))


def _rational(rng, num: int, den: int = 3) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def random_interior_polytope(rng, n: int, n_points: int | None = None, radius: int = 6) -> RationalPolytope:
    """Convex hull of random rational points, resampled until the origin is interior."""
    while True:
        k = n_points or rng.randint(n + 1, n + 4)
        pts = [tuple(_rational(rng, radius) for _ in range(n)) for _ in range(k)]
        try:
            return RationalPolytope(n, vertices=pts)
        except (OriginNotInterior, DegeneratePolytope):
            continue


def random_normals(rng, k: int, entry_max: int = 20) -> list[tuple[int, int]]:
    out: list[tuple[int, int]] = []
    while len(out) < k:
        v, _ = primitive_vector((rng.randint(1, entry_max), rng.randint(1, entry_max)))
        if v not in out:
            out.append(v)
    return out


def random_polygon(rng, k_max: int = 6, entry_max: int = 20) -> Polygon2:
    """Polygon with ``1..k_max`` non-axis edges, normals with entries up to ``entry_max``."""
    k = rng.randint(1, k_max)
    normals = random_normals(rng, k, entry_max)
    lengths = [Fraction(rng.randint(1, 5), rng.randint(1, 3)) for _ in normals]
    return Polygon2.from_normals(normals, lengths)


def random_nef_instance(rng, k_max: int = 5, entry_max: int = 9):
    """Random planar normals with random positive multiplicities."""
    k = rng.randint(1, k_max)
    vs = random_normals(rng, k, entry_max)
    m = [Fraction(rng.randint(1, 6), rng.randint(1, 4)) for _ in vs]
    return vs, m


def random_polynomials(rng, domain, count: int = 10, n_terms: int = 3, radius: int = 3):
    return [random_polynomial(rng, domain, n_terms=rng.randint(1, n_terms), radius=radius)
            for _ in range(count)]

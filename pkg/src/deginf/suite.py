"""Cross-module property corpus behind the ``suite`` command.

Each property runs over seeded random instances and reports how many were
checked; a failure carries the smallest failing instance found by greedy
shrinking. ``mutate="break-linking"`` swaps in a wrong linking matrix (min
instead of max ratio) as a negative control.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .corpus import (instance_rng, random_interior_polytope, random_nef_instance, random_polygon,
                     random_polynomials)
from .degree import check_axioms, homogeneity_probe
from .errors import InvariantViolation
from .exact import RationalMatrix
from .polytope import eval_by_scaling, subdegree_from_polytope
from .poly import LaurentPolynomial
from .toric import (Fan2, Polygon2, _check_vectors, intersection_via_fan, intersection_via_linking,
                    linking_matrix, nef_membership)

MUTATIONS = ("break-linking",)


def broken_linking_matrix(vs) -> RationalMatrix:
    vs = _check_vectors(vs)
    return RationalMatrix([[min(b / a for a, b in zip(vi, vj)) for vj in vs] for vi in vs])


@dataclass
class PropertyResult:
    name: str
    checked: int = 0
    failures: int = 0
    example: Optional[dict] = None

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_json(self) -> dict:
        d = {"name": self.name, "checked": self.checked, "failures": self.failures,
             "passed": self.passed}
        if self.example is not None:
            d["minimized_failure"] = self.example
        return d


@dataclass
class SuiteSizes:
    polytopes2: int = 40
    polytopes3: int = 10
    polys_per_polytope: int = 5
    polygons: int = 60
    nef_instances: int = 100


def _poly_json(f: LaurentPolynomial) -> str:
    return str(f)


def _shrink_poly(f: LaurentPolynomial, fails: Callable) -> LaurentPolynomial:
    changed = True
    while changed and len(f) > 1:
        changed = False
        for e in f.support:
            g = LaurentPolynomial(f.domain, {k: v for k, v in f.items() if k != e})
            if fails(g):
                f, changed = g, True
                break
    return f


def _shrink_normals(vs: list, fails: Callable) -> list:
    changed = True
    while changed and len(vs) > 1:
        changed = False
        for i in range(len(vs)):
            ws = vs[:i] + vs[i + 1:]
            if fails(ws):
                vs, changed = ws, True
                break
    return vs


def _polytope_corpus(seed: int, sizes: SuiteSizes):
    for i in range(sizes.polytopes2):
        yield i, random_interior_polytope(instance_rng(seed, 10, i), 2)
    for i in range(sizes.polytopes3):
        yield sizes.polytopes2 + i, random_interior_polytope(instance_rng(seed, 11, i), 3)


def run_suite(seed: int = 0, sizes: SuiteSizes | None = None, mutate: str | None = None) -> list[PropertyResult]:
    sizes = sizes or SuiteSizes()
    if mutate is not None and mutate not in MUTATIONS:
        raise ValueError(f"unknown mutation {mutate!r}")
    linking = broken_linking_matrix if mutate == "break-linking" else linking_matrix

    oracle = PropertyResult("polytope-oracle-agreement")
    axioms = PropertyResult("degree-axioms")
    homog = PropertyResult("homogeneity")
    for idx, P in _polytope_corpus(seed, sizes):
        s = subdegree_from_polytope(P)
        fs = random_polynomials(instance_rng(seed, 12, idx), s.domain, sizes.polys_per_polytope)
        for f in fs:
            oracle.checked += 1

            def bad(g, P=P, s=s):
                return eval_by_scaling(P, g) != s(g)
            if bad(f):
                oracle.failures += 1
                if oracle.example is None:
                    oracle.example = {"weights": [[str(w) for w in ws] for ws in s.weights],
                                      "poly": _poly_json(_shrink_poly(f, bad))}
        pairs = list(zip(fs, fs[1:] + fs[:1]))
        rep = check_axioms(s, pairs)
        axioms.checked += rep.checked
        if not rep.ok:
            axioms.failures += 1
            if axioms.example is None:
                axioms.example = {"weights": [[str(w) for w in ws] for ws in s.weights],
                                  "violations": [[str(x) for x in v] for v in rep.violations[:3]]}
        for f in fs[:2]:
            homog.checked += 1
            ok, k = homogeneity_probe(s, f, 4)
            if not ok:
                homog.failures += 1
                if homog.example is None:
                    homog.example = {"weights": [[str(w) for w in ws] for ws in s.weights],
                                     "poly": str(f), "k": k}

    ident = PropertyResult("linking-intersection-identity")
    for i in range(sizes.polygons):
        P = random_polygon(instance_rng(seed, 20, i))
        ident.checked += 1

        def fails(vs, linking=linking):
            Q = Polygon2.from_normals(vs)
            li = intersection_via_linking(vs, linking)
            I_fan = intersection_via_fan(Fan2.of_polygon(Q), Q.normals)
            return li.L @ I_fan != li.D or li.I != I_fan

        if fails(P.normals):
            ident.failures += 1
            if ident.example is None:
                vs = _shrink_normals(list(P.normals), fails)
                ident.example = {"normals": [list(v) for v in vs]}

    nef = PropertyResult("nef-two-route-agreement")
    for i in range(sizes.nef_instances):
        vs, m = random_nef_instance(instance_rng(seed, 30, i))
        nef.checked += 1
        try:
            nef_membership(vs, m)
        except InvariantViolation as exc:
            nef.failures += 1
            if nef.example is None:
                nef.example = {"normals": [list(v) for v in vs], "m": [str(x) for x in m],
                               "message": str(exc)}
    return [oracle, axioms, homog, ident, nef]

"""JSON forms of domains, polynomials, degree functions, polytopes and polygons.

All rationals travel as strings (``"p/q"`` or ``"-inf"``).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .degree import NEG_INF, GeneratedFiltration, Subdegree, WeightedDegree, format_value
from .errors import InputError, ParseError
from .exact import RationalMatrix
from .poly import LaurentPolynomial, RingDomain, parse_poly
from .polytope import Facet, OriginMode, RationalPolytope, subdegree_from_polytope
from .toric import Polygon2


def rat(x) -> str:
    return format_value(x)


def rats(xs) -> list[str]:
    return [rat(x) for x in xs]


def matrix_json(M: RationalMatrix | None):
    return None if M is None else [rats(r) for r in M.tolist()]


def _fraction(x) -> Fraction:
    if isinstance(x, float):
        raise ParseError(f"floating-point value {x!r}; write rationals as strings")
    try:
        return Fraction(str(x).replace("−", "-"))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {x!r}") from exc


def _get(d: Mapping, key: str):
    try:
        return d[key]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"missing field {key!r}") from exc


def poly_from_json(x, domain: RingDomain) -> LaurentPolynomial:
    """A polynomial given as text or in the ``{"domain", "terms"}`` form."""
    if isinstance(x, str):
        return parse_poly(x, domain)
    if isinstance(x, Mapping):
        if "domain" not in x:
            x = dict(x, domain=domain.to_json())
        f = LaurentPolynomial.from_json(x)
        if f.domain != domain:
            raise InputError(f"polynomial on {f.domain}, expected {domain}")
        return f
    raise ParseError(f"cannot read a polynomial from {x!r}")


def is_polytope_json(d) -> bool:
    return isinstance(d, Mapping) and d.get("kind", "polytope") == "polytope" and (
        "vertices" in d or "facets" in d)


def degree_from_json(d: Mapping):
    """Build a degree function from its descriptor.

    A polytope descriptor is accepted as well and yields its subdegree.
    """
    if not isinstance(d, Mapping):
        raise ParseError("degree descriptor must be a JSON object")
    if is_polytope_json(d):
        return subdegree_from_polytope(polytope_from_json(d))
    kind = d.get("kind")
    if kind == "weighted":
        domain = RingDomain.from_json(_get(d, "domain"))
        return WeightedDegree(domain, tuple(_fraction(w) for w in _get(d, "weight")))
    if kind == "subdegree":
        parts = _get(d, "parts")
        if not parts:
            raise ParseError("subdegree needs at least one part")
        domain = RingDomain.from_json(d["domain"]) if "domain" in d else None
        out = []
        for p in parts:
            if isinstance(p, Mapping):
                p = dict(p)
                p.setdefault("kind", "weighted")
                if domain is not None:
                    p.setdefault("domain", domain.to_json())
                w = degree_from_json(p)
            else:
                if domain is None:
                    raise ParseError("bare weight lists need a subdegree-level domain")
                w = WeightedDegree(domain, tuple(_fraction(a) for a in p))
            out.append(w)
        return Subdegree(domain or out[0].domain, tuple(out))
    if kind == "generated":
        domain = RingDomain.from_json(_get(d, "domain"))
        gens = []
        for g in _get(d, "generators"):
            gens.append((poly_from_json(_get(g, "poly"), domain), int(_get(g, "weight"))))
        caps = d.get("caps", {})
        box = caps.get("box")
        try:
            return GeneratedFiltration(domain, tuple(gens), dmax=int(caps.get("dmax", 12)),
                                       box=None if box is None else tuple(map(tuple, box)))
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    raise ParseError(f"unknown degree kind {kind!r}")


def degree_to_json(delta) -> dict:
    if isinstance(delta, WeightedDegree):
        return {"kind": "weighted", "domain": delta.domain.to_json(), "weight": rats(delta.weight)}
    if isinstance(delta, Subdegree):
        return {"kind": "subdegree", "domain": delta.domain.to_json(),
                "parts": [{"kind": "weighted", "weight": rats(p.weight)} for p in delta.parts]}
    if isinstance(delta, GeneratedFiltration):
        caps = {"dmax": delta.dmax}
        if delta.box is not None:
            caps["box"] = [list(b) for b in delta.box]
        return {"kind": "generated", "domain": delta.domain.to_json(),
                "generators": [{"poly": g.to_json(), "weight": w} for g, w in delta.generators],
                "caps": caps}
    raise InputError(f"cannot serialize {type(delta).__name__}")


def polytope_from_json(d: Mapping) -> RationalPolytope:
    try:
        mode = OriginMode(d.get("mode", "INTERIOR"))
    except ValueError as exc:
        raise ParseError(f"unknown polytope mode {d.get('mode')!r}") from exc
    if "vertices" in d:
        verts = [tuple(_fraction(a) for a in v) for v in d["vertices"]]
        if not verts:
            raise ParseError("empty vertex list")
        n = int(d.get("n", len(verts[0])))
        return RationalPolytope(n, vertices=verts, mode=mode)
    facets = []
    for f in _get(d, "facets"):
        facets.append(Facet.from_rational(tuple(_fraction(a) for a in _get(f, "normal")),
                                          _fraction(_get(f, "c"))))
    if not facets:
        raise ParseError("empty facet list")
    n = int(d.get("n", len(facets[0].normal)))
    return RationalPolytope(n, facets=facets, mode=mode)


def polytope_to_json(P: RationalPolytope) -> dict:
    d = {"n": P.n, "mode": P.mode.value,
         "facets": [{"normal": list(f.normal), "c": rat(f.c)} for f in P.facets]}
    if P.vertices is not None:
        d["vertices"] = [rats(v) for v in P.vertices]
    return d


def polygon_from_json(d: Mapping) -> Polygon2:
    """Polygon from ``{"normals": [...], "lengths": [...]}`` or a planar polytope descriptor."""
    if not isinstance(d, Mapping):
        raise ParseError("polygon descriptor must be a JSON object")
    if "normals" in d:
        normals = []
        for v in d["normals"]:
            try:
                normals.append(tuple(int(a) for a in v))
            except (TypeError, ValueError) as exc:
                raise ParseError(f"bad normal {v!r}") from exc
        lengths = d.get("lengths")
        return Polygon2.from_normals(normals, None if lengths is None else [_fraction(t) for t in lengths])
    d = dict(d)
    d.setdefault("mode", "VERTEX_ON_AXES")
    return Polygon2(polytope_from_json(d))


def value_from_json(x):
    if isinstance(x, str) and x.strip() == "-inf":
        return NEG_INF
    return _fraction(x)

"""Command-line front end: every computation with JSON in and JSON out.

Output always has the keys ``spec_revision``, ``inputs_echo`` and either
``result`` or ``error``. Exit codes: 0 success, 1 property failure, 2 input
error, 3 computation cap, 4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .conjecture import ExperimentConfig, exhaustive_n2_check, linking_determinant_experiment
from .degree import Subdegree, WeightedDegree, format_value
from .errors import DeginfError, InputError, InvariantViolation, ParseError
from .poly import LaurentPolynomial
from .polytope import semigroup_generators, subdegree_from_polytope
from .serialize import (degree_from_json, degree_to_json, is_polytope_json, matrix_json, poly_from_json,
                        polygon_from_json, polytope_from_json, polytope_to_json, rat, rats, value_from_json)
from .structure import (components_at_infinity, divisor_at_infinity, extract_semidegree, minimal_presentation,
                        part_witness, rees_normalize, scale_to_integer)
from .suite import MUTATIONS, SuiteSizes, run_suite
from .toric import (divisor_multiplicities, intersection_report, linking_at_infinity_2d,
                    linking_at_infinity_sampled, nef_membership)

FORMAT_REVISION = "1"
EXIT_OK, EXIT_PROPERTY, EXIT_INPUT, EXIT_CAP, EXIT_INVARIANT = 0, 1, 2, 3, 4


class Failed(Exception):
    """A computation finished but its checked property does not hold."""

    def __init__(self, result, code=EXIT_PROPERTY):
        super().__init__("property failure")
        self.result = result
        self.code = code


def load_json(arg: str):
    """Inline JSON (starting with ``{`` or ``[``) or a path to a JSON file."""
    text = arg.strip()
    if not text.startswith(("{", "[")):
        try:
            text = Path(arg).read_text(encoding="utf-8")
        except OSError as exc:
            raise ParseError(f"cannot read {arg}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from exc


def _poly_arg(text: str, domain):
    text = text.strip()
    return poly_from_json(load_json(text) if text.startswith("{") else text, domain)


def _subdegree_arg(args):
    d = load_json(args.degree)
    delta = degree_from_json(d)
    if not hasattr(delta, "parts"):
        if isinstance(delta, WeightedDegree):
            return Subdegree(delta.domain, (delta,))
        raise InputError("this command needs a weighted degree, subdegree or polytope")
    return delta


def _int_matrix(text: str):
    M = load_json(text)
    try:
        return [[int(x) for x in row] for row in M]
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad integer matrix {text!r}") from exc


# ------------------------------------------------------------------ commands


def cmd_eval(args):
    delta = degree_from_json(load_json(args.degree))
    f = _poly_arg(args.poly, delta.domain)
    return format_value(delta(f))


def cmd_facets(args):
    P = polytope_from_json(load_json(args.polytope))
    return polytope_to_json(P) | {"bounded": P.bounded}


def cmd_subdegree(args):
    d = load_json(args.input)
    s = subdegree_from_polytope(polytope_from_json(d)) if is_polytope_json(d) else degree_from_json(d)
    if not hasattr(s, "parts"):
        raise InputError("expected a polytope or a subdegree")
    mp = minimal_presentation(s)
    return {"subdegree": degree_to_json(s), "minimal": degree_to_json(mp)}


def cmd_extract(args):
    s = _subdegree_arg(args)
    f = _poly_arg(args.poly, s.domain)
    if args.witness is not None:
        w = _poly_arg(args.witness, s.domain)
    else:
        if not 0 <= args.part < len(s.parts):
            raise InputError(f"part index {args.part} out of range")
        a = part_witness(s, args.part)
        if a is None:
            raise InputError(f"part {args.part} is redundant: no exponent makes it strictly largest")
        w = LaurentPolynomial.monomial(s.domain, a)
    r = extract_semidegree(s, w, f, args.k_cap)
    return {"witness": str(w), "value": rat(r.value), "converged": r.converged,
            "sequence": rats(r.sequence), "stable_from": r.stable_from}


def cmd_normalize(args):
    delta = degree_from_json(load_json(args.degree))
    f = _poly_arg(args.poly, delta.domain)
    r = rees_normalize(delta, f, args.m_cap)
    return {"value": rat(r.value), "converged": r.converged, "sequence": rats(r.sequence),
            "first_minimum_at": r.stable_from, "e": scale_to_integer([r.value]),
            "normalized_integer_value": rat(scale_to_integer([r.value]) * r.value)}


def cmd_divisor(args):
    s = _subdegree_arg(args)
    div = divisor_at_infinity(s)
    return {"e": div.e, "components_at_infinity": components_at_infinity(s),
            "components": [{"index": c.index, "weight": list(c.weight), "d": rat(c.multiplicity),
                            "coefficient": rat(c.coefficient)} for c in div.components]}


def cmd_intersect(args):
    P = polygon_from_json(load_json(args.polygon))
    r = intersection_report(P)
    out = {"normals": [list(v) for v in r.normals], "L": matrix_json(r.L), "D": matrix_json(r.D),
           "I_linking": matrix_json(r.I_linking), "I_fan": matrix_json(r.I_fan), "det_L": rat(r.detL),
           "agree": r.agree, "L_times_I_equals_D": r.identity_holds}
    if not (r.agree and r.identity_holds):
        raise Failed(out, EXIT_INVARIANT)
    return out


def cmd_linking(args):
    delta = degree_from_json(load_json(args.degree))
    pole = degree_from_json(load_json(args.pole))
    if not isinstance(pole, WeightedDegree):
        raise InputError("the pole must be a weighted degree")
    n = delta.domain.n
    M = _int_matrix(args.map) if args.map else [[int(i == j) for j in range(n)] for i in range(n)]
    if n == 2:
        value, ray = linking_at_infinity_2d(delta, pole, M, return_ray=True)
        return {"value": rat(value), "attained_at": list(ray), "exact": True}
    value = linking_at_infinity_sampled(delta, pole, M, args.radius)
    return {"value": rat(value), "exact": False, "radius": args.radius}


def cmd_nef(args):
    d = load_json(args.input)
    try:
        vs = [tuple(int(a) for a in v) for v in d["normals"]]
        m = list(d["m"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"expected {{\"normals\": [...], \"m\": [...]}}: {exc}") from exc
    r = nef_membership(vs, [value_from_json(x) for x in m])
    return {"nef": r.nef, "ample": r.ample, "intersections": rats(r.intersections),
            "witnesses": [None if w is None else list(w) for w in r.witnesses],
            "strict_witnesses": [None if w is None else list(w) for w in r.strict_witnesses]}


def cmd_ample(args):
    P = polygon_from_json(load_json(args.polygon))
    m, r = divisor_multiplicities(P)
    return {"normals": [list(v) for v in P.normals], "m": rats(m), "ample": r.ample, "nef": r.nef}


def cmd_semigroup(args):
    P = polytope_from_json(load_json(args.polytope))
    sg = semigroup_generators(P, args.d_max)
    return {"generators": [{"point": list(p), "degree": d} for p, d in sg.generators],
            "max_degree": sg.max_degree, "saturated": sg.saturated, "d_max": args.d_max}


def cmd_conjecture(args):
    cfg = ExperimentConfig(n=args.n, k_min=args.k_min, k_max=args.k_max, bound=args.bound,
                           trials=args.trials, seed=args.seed)
    rep = linking_determinant_experiment(cfg)
    out = rep.to_json(include_runtime=args.runtime)
    if args.n == 2 and args.exhaustive:
        out["exhaustive_n2"] = exhaustive_n2_check(args.bound, args.k_max)
    return out


def cmd_suite(args):
    sizes = SuiteSizes(polytopes2=args.polytopes2, polytopes3=args.polytopes3,
                       polys_per_polytope=args.polys, polygons=args.polygons,
                       nef_instances=args.nef)
    results = run_suite(args.seed, sizes, args.mutate)
    out = {"seed": args.seed, "properties": [r.to_json() for r in results],
           "all_passed": all(r.passed for r in results)}
    if not out["all_passed"]:
        raise Failed(out)
    return out


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="deginf", description="Exact computations with degree-like functions.")
    p.add_argument("--version", action="version", version=f"deginf {__version__}")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("--out", help="write the JSON output here instead of stdout")
        sp.set_defaults(func=func)
        return sp

    sp = add("eval", cmd_eval, "evaluate a degree function on a polynomial")
    sp.add_argument("--degree", required=True, help="degree descriptor or polytope (file or inline JSON)")
    sp.add_argument("--poly", required=True, help="polynomial text or JSON")

    sp = add("facets", cmd_facets, "facet description of a polytope")
    sp.add_argument("--polytope", required=True)

    sp = add("subdegree", cmd_subdegree, "subdegree of a polytope and its minimal presentation")
    sp.add_argument("--input", required=True, help="polytope or subdegree descriptor")

    sp = add("extract", cmd_extract, "recover one part of a subdegree by the power limit")
    sp.add_argument("--degree", required=True)
    sp.add_argument("--poly", required=True)
    sp.add_argument("--part", type=int, default=0, help="part index (a witness is found by LP)")
    sp.add_argument("--witness", help="explicit witness polynomial instead of --part")
    sp.add_argument("--k-cap", type=int, default=10)

    sp = add("normalize", cmd_normalize, "limit of delta(f^m)/m")
    sp.add_argument("--degree", required=True)
    sp.add_argument("--poly", required=True)
    sp.add_argument("--m-cap", type=int, default=8)

    sp = add("divisor", cmd_divisor, "divisor at infinity of a subdegree")
    sp.add_argument("--degree", required=True)

    sp = add("intersect", cmd_intersect, "intersection matrices of a polygon's curves at infinity")
    sp.add_argument("--polygon", required=True)

    sp = add("linking", cmd_linking, "linking number at infinity")
    sp.add_argument("--degree", required=True)
    sp.add_argument("--pole", required=True, help="weighted degree descriptor")
    sp.add_argument("--map", help="integer matrix of the monomial map, default identity")
    sp.add_argument("--radius", type=int, default=12, help="sampling radius for n >= 3")

    sp = add("nef", cmd_nef, "nefness and ampleness of sum m_i C_i")
    sp.add_argument("--input", required=True, help='{"normals": [[1,1],[1,2]], "m": ["1","1"]}')

    sp = add("ample", cmd_ample, "ampleness of the divisor at infinity of a polygon")
    sp.add_argument("--polygon", required=True)

    sp = add("semigroup", cmd_semigroup, "generators of the graded semigroup of a polytope")
    sp.add_argument("--polytope", required=True)
    sp.add_argument("--d-max", type=int, default=4)

    sp = add("conjecture", cmd_conjecture, "random search for singular max-ratio matrices")
    sp.add_argument("--n", type=int, default=3)
    sp.add_argument("--k-min", type=int, default=1)
    sp.add_argument("--k-max", type=int, default=5)
    sp.add_argument("--bound", type=int, default=9)
    sp.add_argument("--trials", type=int, default=10_000)
    sp.add_argument("--seed", type=int, default=42)
    sp.add_argument("--runtime", action="store_true", help="include wall-clock time (not deterministic)")
    sp.add_argument("--exhaustive", action="store_true", help="for n = 2 also run the exhaustive check")

    sp = add("suite", cmd_suite, "run the property corpus")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--polytopes2", type=int, default=40)
    sp.add_argument("--polytopes3", type=int, default=10)
    sp.add_argument("--polys", type=int, default=5)
    sp.add_argument("--polygons", type=int, default=60)
    sp.add_argument("--nef", type=int, default=100)
    sp.add_argument("--mutate", choices=MUTATIONS, help="test hook: inject a known bug")
    return p


def _echo(args) -> dict:
    skip = {"func", "out", "command"}
    return {"command": args.command} | {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _emit(payload: dict, out: str | None):
    text = json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    env_seed = os.environ.get("DEGINF_SEED")
    if env_seed is not None and hasattr(args, "seed"):
        try:
            args.seed = int(env_seed)
        except ValueError:
            parser.error(f"DEGINF_SEED must be an integer, got {env_seed!r}")
    envelope = {"spec_revision": FORMAT_REVISION, "inputs_echo": _echo(args)}
    code = EXIT_OK
    try:
        envelope["result"] = args.func(args)
    except Failed as exc:
        envelope["result"] = exc.result
        code = exc.code
    except InvariantViolation as exc:
        envelope["error"] = {"type": type(exc).__name__, "message": str(exc)}
        code = EXIT_INVARIANT
    except DeginfError as exc:
        envelope["error"] = {"type": type(exc).__name__, "message": str(exc)}
        code = exc.exit_code
    except (ValueError, ArithmeticError) as exc:
        envelope["error"] = {"type": type(exc).__name__, "message": str(exc)}
        code = EXIT_INPUT
    _emit(envelope, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())

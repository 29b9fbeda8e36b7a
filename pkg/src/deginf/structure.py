"""Structure of subdegrees: minimal presentations, semidegree extraction,
normalisation by homogenisation, components and divisor at infinity."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Callable, Sequence

from .degree import NEG_INF, Subdegree, WeightedDegree, exponent_ball
from .errors import AmbiguousWitness, DegeneratePart, InputError, NotNonNegative
from .exact import as_fraction
from .lp import strict_cone_feasible
from .poly import LaurentPolynomial, Mode


def _dedupe(parts) -> list[WeightedDegree]:
    seen, out = set(), []
    for p in parts:
        if p.weight not in seen:
            seen.add(p.weight)
            out.append(p)
    return out


def _dominance_rows(parts, i):
    wi = parts[i].weight
    return [tuple(a - b for a, b in zip(wi, p.weight)) for j, p in enumerate(parts) if j != i]


def part_witness(s: Subdegree, i: int, normalize: bool = True):
    """Exponent ``a`` with part ``i`` strictly above every other part, or ``None``.

    With ``normalize`` the feasible direction is scaled by the least integer
    making ``<w_i - w_j, a> >= |w_i - w_j|_1`` for every other part ``j``.
    Then ``s(w^k f) - s(w^k)`` is stable as soon as ``k`` reaches the largest
    absolute exponent entry of ``f``, whatever the size of the weights.
    """
    parts = _dedupe(s.parts)
    target = s.parts[i].weight
    idx = next(j for j, p in enumerate(parts) if p.weight == target)
    rows = _dominance_rows(parts, idx)
    a = strict_cone_feasible(rows, s.domain)
    if a is None or not normalize:
        return a
    t = 1
    for r in rows:
        margin = sum(x * y for x, y in zip(r, a))
        need = sum(abs(x) for x in r)
        t = max(t, -(-need // margin))
    return tuple(t * x for x in a)


def minimal_presentation(s: Subdegree) -> Subdegree:
    """Drop every part that never strictly exceeds all the others on the domain lattice.

    Duplicates are removed first; the result is ordered lexicographically by
    weight, so permuting or repeating the input parts gives the same output.
    """
    parts = _dedupe(s.parts)
    kept = [p for i, p in enumerate(parts)
            if strict_cone_feasible(_dominance_rows(parts, i), s.domain) is not None]
    kept.sort(key=lambda p: p.weight)
    return Subdegree(s.domain, tuple(kept))


@dataclass(frozen=True)
class LimitResult:
    value: object
    converged: bool
    sequence: tuple
    stable_from: int

    def __iter__(self):
        yield self.value
        yield self.converged


def _stable_from(seq) -> int:
    k = len(seq) - 1
    while k > 0 and seq[k - 1] == seq[-1]:
        k -= 1
    return k


def extract_semidegree(s: Subdegree, witness: LaurentPolynomial, f: LaurentPolynomial,
                       k_cap: int = 10) -> LimitResult:
    """Recover one semidegree of ``s`` as ``lim_k s(w^k f) - s(w^k)``.

    The sequence is nonincreasing; ``converged`` means its last three terms
    agree. Raises :class:`AmbiguousWitness` if two or more parts tie for the
    maximum at the witness.
    """
    if witness.is_zero() or f.is_zero():
        raise InputError("witness and f must be nonzero")
    vals = s.part_values(witness)
    top = max(vals)
    if sum(1 for v in vals if v == top) > 1:
        raise AmbiguousWitness(f"witness {witness} ties between parts at value {top}")
    seq = []
    wk = LaurentPolynomial.constant(s.domain)
    for _ in range(k_cap + 1):
        seq.append(s(wk * f) - s(wk))
        wk = wk * witness
    converged = len(seq) >= 3 and seq[-1] == seq[-2] == seq[-3]
    return LimitResult(seq[-1], converged, tuple(seq), _stable_from(seq))


def rees_normalize(delta: Callable, f: LaurentPolynomial, m_cap: int = 8) -> LimitResult:
    """Estimate ``lim_m delta(f^m)/m`` by its running minimum over ``m <= m_cap``.

    ``delta(f^m)`` is subadditive in ``m``, so the limit is the infimum.
    ``converged`` is set when the minimum is attained at two distinct ``m``
    with one dividing the other. Scaling by an integer ``e`` is left to
    :func:`scale_to_integer`.
    """
    if f.is_zero():
        raise InputError("rees_normalize needs a nonzero polynomial")
    seq = []
    power = LaurentPolynomial.constant(f.domain)
    for m in range(1, m_cap + 1):
        power = power * f
        seq.append(as_fraction(delta(power)) / m)
    best = min(seq)
    hits = [m for m, v in enumerate(seq, start=1) if v == best]
    converged = any(b % a == 0 for i, a in enumerate(hits) for b in hits[i + 1:])
    return LimitResult(best, converged, tuple(seq), hits[0])


class NormalizedDegree:
    """``f -> lim delta(f^m)/m`` as a callable, for probing homogeneity."""

    def __init__(self, delta, m_cap: int = 8):
        self.delta = delta
        self.domain = delta.domain
        self.m_cap = m_cap

    def __call__(self, f: LaurentPolynomial):
        if f.is_zero():
            return NEG_INF
        return rees_normalize(self.delta, f, self.m_cap).value


def scale_to_integer(values: Sequence) -> int:
    """Least positive ``e`` making every value integral."""
    e = 1
    for v in values:
        if v is NEG_INF:
            raise InputError("cannot scale -inf to an integer")
        e = lcm(e, as_fraction(v).denominator)
    return e


def components_at_infinity(s: Subdegree) -> int:
    """Number of components of the boundary of the completion defined by ``s``.

    Requires ``s >= 0`` on the domain lattice; counts the parts of the
    minimal presentation, minus one if the zero weight is among them.
    """
    neg = strict_cone_feasible([tuple(-w for w in p.weight) for p in s.parts], s.domain)
    if neg is not None:
        raise NotNonNegative(f"subdegree is negative at exponent {neg}")
    mp = minimal_presentation(s)
    return len(mp.parts) - sum(1 for p in mp.parts if p.is_zero)


@dataclass(frozen=True)
class DivisorComponent:
    index: int  # position in the minimal presentation
    weight: tuple  # integer weight of e * part
    multiplicity: Fraction  # d_j
    coefficient: Fraction  # 1 / d_j


@dataclass(frozen=True)
class DivisorAtInfinity:
    e: int
    components: tuple

    @property
    def count(self) -> int:
        return len(self.components)


def _attains_positive(weight, mode: Mode) -> bool:
    if mode is Mode.LAURENT:
        return any(weight)
    return any(w > 0 for w in weight)


def divisor_at_infinity(s: Subdegree) -> DivisorAtInfinity:
    """Coefficients ``1/d_j`` of the divisor at infinity of ``e * s``.

    ``d_j`` is the gcd of the positive values of the ``j``-th integer-scaled
    part. For a linear form on the lattice (or on the orthant with some
    positive entry) that gcd equals the gcd of the nonzero entries.
    """
    mp = minimal_presentation(s)
    e = scale_to_integer([w for p in mp.parts for w in p.weight])
    comps = []
    for j, p in enumerate(mp.parts):
        if p.is_zero:
            continue
        w = tuple(int(e * x) for x in p.weight)
        if not _attains_positive(w, s.domain.mode):
            raise DegeneratePart(f"part {p.weight} never takes a positive value")
        d = 0
        for x in w:
            d = gcd(d, x)
        comps.append(DivisorComponent(j, w, Fraction(d), Fraction(1, d)))
    return DivisorAtInfinity(e, tuple(comps))


def brute_force_value_gcd(weight: Sequence[int], domain, radius: int = 6) -> int:
    """gcd of the positive values ``<w, a>`` over domain lattice points with ``|a|_1 <= radius``."""
    g = 0
    for a in exponent_ball(domain, radius):
        v = sum(w * x for w, x in zip(weight, a))
        if v > 0:
            g = gcd(g, v)
    return g

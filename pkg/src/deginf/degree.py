"""Degree-like functions on (Laurent) polynomial rings.

Three concrete representations share one calling convention: each object
has a ``domain`` and is called on a polynomial to produce a degree value,
which is a :class:`~fractions.Fraction` or the sentinel :data:`NEG_INF`
(the value at the zero polynomial).
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import total_ordering
from typing import Callable, Optional, Sequence

from .errors import BoxExceeded, CapExceeded, DomainMismatch
from .exact import as_fraction
from .poly import LaurentPolynomial, RingDomain


@total_ordering
class _NegInf:
    """Minus infinity for degree values: absorbs addition, below every rational."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("-inf")

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __sub__(self, other):
        if other is self:
            raise ArithmeticError("-inf - -inf is undefined")
        return self

    def __rmul__(self, k):
        if k > 0:
            return self
        raise ArithmeticError("only positive multiples of -inf are defined")

    __mul__ = __rmul__

    def __repr__(self):
        return "NEG_INF"

    def __str__(self):
        return "-inf"

    def __reduce__(self):
        return (_NegInf, ())


NEG_INF = _NegInf()


def format_value(v) -> str:
    return "-inf" if v is NEG_INF else str(v)


def parse_value(s: str):
    return NEG_INF if s.strip() == "-inf" else Fraction(s)


def _require_domain(d, f: LaurentPolynomial):
    if f.domain != d.domain:
        raise DomainMismatch(f"{d.domain} vs polynomial on {f.domain}")


@dataclass(frozen=True)
class WeightedDegree:
    """Semidegree given by a rational weight vector: ``x^a -> <w, a>``."""

    domain: RingDomain
    weight: tuple

    def __post_init__(self):
        w = tuple(as_fraction(x) for x in self.weight)
        if len(w) != self.domain.n:
            raise DomainMismatch(f"weight of length {len(w)} on {self.domain}")
        object.__setattr__(self, "weight", w)

    def on_exponent(self, a) -> Fraction:
        return sum((w * x for w, x in zip(self.weight, a)), Fraction(0))

    def __call__(self, f: LaurentPolynomial):
        _require_domain(self, f)
        if f.is_zero():
            return NEG_INF
        return max(self.on_exponent(a) for a in f.support)

    @property
    def is_zero(self) -> bool:
        return not any(self.weight)

    def scaled(self, k) -> "WeightedDegree":
        k = as_fraction(k)
        return WeightedDegree(self.domain, tuple(k * w for w in self.weight))


def eval_weighted(d: WeightedDegree, f: LaurentPolynomial):
    return d(f)


@dataclass(frozen=True)
class Subdegree:
    """Pointwise maximum of finitely many weighted degrees."""

    domain: RingDomain
    parts: tuple

    def __post_init__(self):
        parts = tuple(self.parts)
        if not parts:
            raise ValueError("a subdegree needs at least one part")
        for p in parts:
            if p.domain != self.domain:
                raise DomainMismatch("all parts must share the subdegree's domain")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def from_weights(cls, domain: RingDomain, weights) -> "Subdegree":
        return cls(domain, tuple(WeightedDegree(domain, tuple(w)) for w in weights))

    @property
    def weights(self) -> list[tuple]:
        return [p.weight for p in self.parts]

    def on_exponent(self, a) -> Fraction:
        return max(p.on_exponent(a) for p in self.parts)

    def __call__(self, f: LaurentPolynomial):
        _require_domain(self, f)
        if f.is_zero():
            return NEG_INF
        return max(self.on_exponent(a) for a in f.support)

    def part_values(self, f: LaurentPolynomial) -> list:
        return [p(f) for p in self.parts]

    def scaled(self, k) -> "Subdegree":
        return Subdegree(self.domain, tuple(p.scaled(k) for p in self.parts))


def eval_subdegree(s: Subdegree, f: LaurentPolynomial):
    return s(f)


def _row_reduce(row: dict, basis: dict):
    """Reduce a sparse row against an echelon basis ``{pivot: row}`` in place."""
    for piv in sorted(basis, reverse=True):
        c = row.get(piv)
        if c:
            for k, v in basis[piv].items():
                nv = row.get(k, 0) - c * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    return row


def _insert(row: dict, basis: dict) -> bool:
    _row_reduce(row, basis)
    if not row:
        return False
    piv = max(row)
    inv = 1 / row[piv]
    row = {k: v * inv for k, v in row.items()}
    # keep the basis fully reduced so reduction order does not matter
    for p, other in basis.items():
        c = other.get(piv)
        if c:
            for k, v in row.items():
                nv = other.get(k, 0) - c * v
                if nv:
                    other[k] = nv
                else:
                    other.pop(k, None)
    basis[piv] = row
    return True


@dataclass
class GeneratedFiltration:
    """Filtration whose level ``F_d`` is spanned by generator products of weight <= d.

    Evaluation finds the least ``d <= dmax`` with ``f`` in ``F_d`` by exact
    elimination. Spans are computed over the full support of the products,
    so cancellations outside the box are seen; ``box`` bounds the exponent
    range of polynomials that may be evaluated.
    """

    domain: RingDomain
    generators: tuple  # ((LaurentPolynomial, int), ...)
    dmax: int = 12
    box: Optional[tuple] = None  # ((lo, hi), ...) per coordinate
    _levels: list = field(default_factory=list, init=False, repr=False, compare=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, init=False, repr=False, compare=False)

    def __post_init__(self):
        gens = []
        for g, w in self.generators:
            if g.domain != self.domain:
                raise DomainMismatch("generator on a different domain")
            w = int(w)
            if w < 1:
                raise ValueError("generator weights must be positive integers")
            gens.append((g, w))
        self.generators = tuple(gens)
        if self.box is not None:
            self.box = tuple((int(lo), int(hi)) for lo, hi in self.box)
            if len(self.box) != self.domain.n:
                raise ValueError("box must give one range per variable")

    def __hash__(self):
        return id(self)

    def _exponent_tuples(self, d: int):
        weights = [w for _, w in self.generators]

        def rec(i, remaining):
            if i == len(weights):
                if remaining == 0:
                    yield ()
                return
            for e in range(remaining // weights[i] + 1):
                for rest in rec(i + 1, remaining - e * weights[i]):
                    yield (e,) + rest

        return rec(0, d)

    def _build_to(self, d: int):
        # caller holds the lock
        if not self._levels:
            one = LaurentPolynomial.constant(self.domain)
            basis: dict = {}
            _insert(dict(one.items()), basis)
            self._levels.append(basis)
            self._products = {(0,) * len(self.generators): one}
        while len(self._levels) <= d:
            level = len(self._levels)
            basis = {k: dict(v) for k, v in self._levels[-1].items()}
            for e in self._exponent_tuples(level):
                prod = self._product(e)
                _insert(dict(prod.items()), basis)
            self._levels.append(basis)

    def _product(self, e: tuple) -> LaurentPolynomial:
        p = self._products.get(e)
        if p is None:
            i = next(j for j, x in enumerate(e) if x)
            smaller = e[:i] + (e[i] - 1,) + e[i + 1:]
            p = self._product(smaller) * self.generators[i][0]
            self._products[e] = p
        return p

    def in_level(self, f: LaurentPolynomial, d: int) -> bool:
        with self._lock:
            self._build_to(d)
            basis = self._levels[d]
        row = _row_reduce(dict(f.items()), basis)
        return not row

    def _check_box(self, f: LaurentPolynomial):
        if self.box is None:
            return
        for a in f.support:
            for x, (lo, hi) in zip(a, self.box):
                if not lo <= x <= hi:
                    raise BoxExceeded(f"exponent {a} outside box {self.box}")

    def __call__(self, f: LaurentPolynomial):
        _require_domain(self, f)
        if f.is_zero():
            return NEG_INF
        self._check_box(f)
        for d in range(self.dmax + 1):
            if self.in_level(f, d):
                return Fraction(d)
        raise CapExceeded(f"{f} is not in F_{self.dmax}")


def eval_generated(gf: GeneratedFiltration, f: LaurentPolynomial):
    return gf(f)


# ------------------------------------------------------------------ checks


@dataclass
class AxiomReport:
    checked: int = 0
    constant_ok: bool = True
    multiplicative: bool = True
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.constant_ok and not self.violations


def check_axioms(delta: Callable, samples: Sequence[tuple[LaurentPolynomial, LaurentPolynomial]],
                 constants: Sequence = (1, 7, Fraction(-2, 3))) -> AxiomReport:
    """Check the degree-like axioms on sample pairs and collect witnesses of failure.

    Checked: ``delta(c) = 0`` for nonzero constants; ``delta(f+g) <=
    max(delta(f), delta(g))`` with equality whenever the two values differ;
    ``delta(fg) <= delta(f) + delta(g)``. ``multiplicative`` records whether
    the last one held with equality on every pair.
    """
    rep = AxiomReport()
    domain = delta.domain
    for c in constants:
        v = delta(LaurentPolynomial.constant(domain, c))
        if v != 0:
            rep.constant_ok = False
            rep.violations.append(("constant", c, v))
    for f, g in samples:
        rep.checked += 1
        df, dg = delta(f), delta(g)
        dsum = delta(f + g)
        top = max(df, dg)
        if dsum > top:
            rep.violations.append(("sum", f, g))
        elif df != dg and dsum != top:
            rep.violations.append(("sum-strict", f, g))
        dprod = delta(f * g)
        if dprod > df + dg:
            rep.violations.append(("product", f, g))
        elif dprod != df + dg:
            rep.multiplicative = False
    return rep


def homogeneity_probe(delta: Callable, f: LaurentPolynomial, k_max: int) -> tuple[bool, Optional[int]]:
    """Check ``delta(f^k) == k * delta(f)`` for ``k = 2..k_max``.

    Returns ``(True, None)`` or ``(False, k)`` with the first failing ``k``.
    """
    if f.is_zero():
        raise ValueError("homogeneity probe needs a nonzero polynomial")
    base = delta(f)
    power = f
    for k in range(2, k_max + 1):
        power = power * f
        if delta(power) != k * base:
            return False, k
    return True, None


def random_polynomial(rng, domain: RingDomain, n_terms: int = 3, radius: int = 2,
                      coef_range: int = 5) -> LaurentPolynomial:
    """Random nonzero polynomial with exponents in ``[-radius, radius]`` (or ``[0, radius]``)."""
    lo = -radius if domain.mode.value == "LAURENT" else 0
    while True:
        terms = {}
        for _ in range(n_terms):
            e = tuple(rng.randint(lo, radius) for _ in range(domain.n))
            c = Fraction(rng.choice([i for i in range(-coef_range, coef_range + 1) if i]),
                         rng.randint(1, 3))
            terms[e] = c
        f = LaurentPolynomial(domain, terms)
        if not f.is_zero():
            return f


def exponent_ball(domain: RingDomain, radius: int):
    """Lattice points of the domain with L1 norm at most ``radius``."""
    lo = -radius if domain.mode.value == "LAURENT" else 0
    for a in itertools.product(range(lo, radius + 1), repeat=domain.n):
        if sum(abs(x) for x in a) <= radius:
            yield a

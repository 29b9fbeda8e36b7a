"""Laurent and ordinary polynomials with exact rational coefficients."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import DomainMismatch, ParseError
from .exact import as_fraction


class Mode(enum.Enum):
    LAURENT = "LAURENT"
    POLYNOMIAL = "POLYNOMIAL"


@dataclass(frozen=True)
class RingDomain:
    n: int
    mode: Mode = Mode.POLYNOMIAL

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("ring dimension must be at least 1")
        if not isinstance(self.mode, Mode):
            object.__setattr__(self, "mode", Mode(self.mode))

    def contains(self, exp: tuple) -> bool:
        return len(exp) == self.n and (self.mode is Mode.LAURENT or all(a >= 0 for a in exp))

    def to_json(self) -> dict:
        return {"n": self.n, "mode": self.mode.value}

    @classmethod
    def from_json(cls, d: Mapping) -> "RingDomain":
        try:
            return cls(int(d["n"]), Mode(d.get("mode", "POLYNOMIAL")))
        except (KeyError, ValueError, TypeError) as exc:
            raise ParseError(f"bad domain {d!r}: {exc}") from exc


def LAURENT(n: int) -> RingDomain:
    return RingDomain(n, Mode.LAURENT)


def POLYNOMIAL(n: int) -> RingDomain:
    return RingDomain(n, Mode.POLYNOMIAL)


def grlex_key(exp: tuple) -> tuple:
    return (sum(exp), exp)


class LaurentPolynomial:
    """Finite map from exponent vectors to nonzero rational coefficients.

    Immutable; the zero polynomial has no terms.
    """

    __slots__ = ("domain", "_terms", "_hash")

    def __init__(self, domain: RingDomain, terms: Mapping | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple, Fraction] = {}
        for exp, coef in items:
            exp = tuple(int(a) for a in exp)
            if not domain.contains(exp):
                raise DomainMismatch(f"exponent {exp} is outside {domain}")
            acc[exp] = acc.get(exp, Fraction(0)) + as_fraction(coef)
        self.domain = domain
        self._terms = {e: c for e, c in acc.items() if c != 0}
        self._hash = None

    # construction helpers
    @classmethod
    def constant(cls, domain: RingDomain, c=1) -> "LaurentPolynomial":
        return cls(domain, {(0,) * domain.n: c})

    @classmethod
    def monomial(cls, domain: RingDomain, exp, c=1) -> "LaurentPolynomial":
        return cls(domain, {tuple(exp): c})

    @classmethod
    def variable(cls, domain: RingDomain, i: int) -> "LaurentPolynomial":
        return cls.monomial(domain, tuple(int(j == i) for j in range(domain.n)))

    # views
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    @property
    def support(self) -> list[tuple]:
        return list(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def coefficient(self, exp) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    # arithmetic
    def _check(self, other: "LaurentPolynomial"):
        if self.domain != other.domain:
            raise DomainMismatch(f"{self.domain} vs {other.domain}")

    def _coerce(self, other):
        if isinstance(other, LaurentPolynomial):
            self._check(other)
            return other
        return LaurentPolynomial.constant(self.domain, as_fraction(other))

    def __add__(self, other):
        other = self._coerce(other)
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = acc.get(e, 0) + c
        return LaurentPolynomial(self.domain, acc)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial(self.domain, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        acc: dict[tuple, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, 0) + c1 * c2
        return LaurentPolynomial(self.domain, acc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        result = LaurentPolynomial.constant(self.domain)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, LaurentPolynomial):
            return self.domain == other.domain and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == LaurentPolynomial.constant(self.domain, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.domain, frozenset(self._terms.items())))
        return self._hash

    def sorted_terms(self) -> list[tuple[tuple, Fraction]]:
        """Terms in descending graded-lexicographic order."""
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"LaurentPolynomial({self.domain.n}, {self.domain.mode.value}, {format_poly(self)!r})"

    def to_json(self) -> dict:
        return {
            "domain": self.domain.to_json(),
            "terms": [{"exp": list(e), "coef": str(c)} for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, d: Mapping) -> "LaurentPolynomial":
        try:
            domain = RingDomain.from_json(d["domain"])
            return cls(domain, [(t["exp"], Fraction(str(t["coef"]))) for t in d["terms"]])
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            if isinstance(exc, DomainMismatch):
                raise
            raise ParseError(f"bad polynomial JSON: {exc}") from exc


def poly_multiply(f: LaurentPolynomial, g: LaurentPolynomial) -> LaurentPolynomial:
    f._check(g)
    return f * g


# ---------------------------------------------------------------- text format

_ALIASES = {"x": 0, "y": 1, "z": 2}


def _var_name(i: int, n: int) -> str:
    if n <= 3:
        return "xyz"[i]
    return f"x{i + 1}"


def format_poly(f: LaurentPolynomial, names: list[str] | None = None) -> str:
    n = f.domain.n
    names = names or [_var_name(i, n) for i in range(n)]
    if f.is_zero():
        return "0"
    out = []
    for k, (e, c) in enumerate(f.sorted_terms()):
        sign = "-" if c < 0 else "+"
        c = abs(c)
        factors = []
        for name, a in zip(names, e):
            if a == 1:
                factors.append(name)
            elif a != 0:
                factors.append(f"{name}^{a}")
        if c != 1 or not factors:
            factors.insert(0, str(c))
        body = "*".join(factors)
        if k == 0:
            out.append(body if sign == "+" else "-" + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>[A-Za-z]\w*)|(?P<op>[-+*^()]))")


def _tokens(text: str):
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos} in {text!r}")
        pos = m.end()
        kind = m.lastgroup
        yield kind, m.group(kind)


def _var_index(name: str, n: int) -> int:
    if name in _ALIASES and n <= 3:
        i = _ALIASES[name]
    elif re.fullmatch(r"x\d+", name):
        i = int(name[1:]) - 1
    else:
        raise ParseError(f"unknown variable {name!r}")
    if not 0 <= i < n:
        raise ParseError(f"variable {name!r} out of range for n={n}")
    return i


def parse_poly(text: str, domain: RingDomain) -> LaurentPolynomial:
    """Parse ``c * x1^a1 ... xn^an`` terms joined by ``+``/``-``.

    Variables are ``x1..xn`` (or ``x, y, z`` when n <= 3); exponents may be
    negative, written ``x^-1`` or ``x^(-1)``; coefficients are ``p`` or ``p/q``.
    Factors inside a term may be separated by ``*`` or whitespace.
    """
    toks = list(_tokens(text))
    if not toks:
        raise ParseError("empty polynomial")
    n = domain.n
    terms: list[tuple[tuple, Fraction]] = []
    i = 0

    def read_int(i):
        sign = 1
        paren = False
        if i < len(toks) and toks[i] == ("op", "("):
            paren = True
            i += 1
        if i < len(toks) and toks[i][0] == "op" and toks[i][1] in "+-":
            sign = -1 if toks[i][1] == "-" else 1
            i += 1
        if i >= len(toks) or toks[i][0] != "num" or "/" in toks[i][1]:
            raise ParseError(f"expected integer exponent in {text!r}")
        val = sign * int(toks[i][1])
        i += 1
        if paren:
            if i >= len(toks) or toks[i] != ("op", ")"):
                raise ParseError(f"unbalanced parenthesis in {text!r}")
            i += 1
        return val, i

    while i < len(toks):
        sign = 1
        while i < len(toks) and toks[i][0] == "op" and toks[i][1] in "+-":
            if toks[i][1] == "-":
                sign = -sign
            i += 1
        coef = Fraction(sign)
        exp = [0] * n
        seen = False
        while i < len(toks):
            kind, val = toks[i]
            if kind == "op" and val == "*":
                i += 1
                continue
            if kind == "op" and val in "+-":
                break
            if kind == "num":
                try:
                    coef *= Fraction(val)
                except ZeroDivisionError as exc:
                    raise ParseError(f"zero denominator in {text!r}") from exc
                i += 1
            elif kind == "var":
                idx = _var_index(val, n)
                i += 1
                power = 1
                if i < len(toks) and toks[i] == ("op", "^"):
                    power, i = read_int(i + 1)
                exp[idx] += power
            else:
                raise ParseError(f"unexpected {val!r} in {text!r}")
            seen = True
        if not seen:
            raise ParseError(f"dangling operator in {text!r}")
        terms.append((tuple(exp), coef))
    return LaurentPolynomial(domain, terms)

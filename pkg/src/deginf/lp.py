"""Exact linear programming over the rationals and cone feasibility on top of it.

A dense two-phase tableau simplex with Bland's rule. Problems here have a
handful of variables and constraints, so clarity beats speed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .exact import as_fraction, clear_denominators
from .poly import Mode, RingDomain

LE, GE, EQ = "<=", ">=", "=="


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: Optional[tuple[Fraction, ...]] = None
    value: Optional[Fraction] = None


def _pivot(T, basis, r, c):
    piv = T[r][c]
    row = T[r]
    if piv != 1:
        T[r] = row = [v / piv for v in row]
    for i, other in enumerate(T):
        if i != r:
            f = other[c]
            if f:
                T[i] = [a - f * b for a, b in zip(other, row)]
    basis[r] = c


def _simplex(T, basis, cost, allowed):
    """Minimise ``cost . x`` over the tableau in place. Returns False if unbounded."""
    while True:
        entering = None
        for j in allowed:
            if j in basis:
                continue
            rc = cost[j] - sum(cost[basis[i]] * T[i][j] for i in range(len(T)))
            if rc < 0:
                entering = j
                break
        if entering is None:
            return True
        best = None
        for i, row in enumerate(T):
            a = row[entering]
            if a > 0:
                ratio = row[-1] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return False
        _pivot(T, basis, best[1], entering)


def solve_lp(n: int, constraints: Sequence[tuple[Sequence, str, object]],
             objective: Optional[Sequence] = None) -> LPResult:
    """Minimise ``objective . x`` subject to ``constraints`` and ``x >= 0``.

    Each constraint is ``(coefficients, sense, rhs)`` with sense one of
    ``"<="``, ``">="``, ``"=="``. With no objective this is a pure
    feasibility check.
    """
    rows = []
    for coeffs, sense, rhs in constraints:
        coeffs = [as_fraction(a) for a in coeffs]
        if len(coeffs) != n:
            raise ValueError("constraint length does not match variable count")
        rhs = as_fraction(rhs)
        if rhs < 0:
            coeffs = [-a for a in coeffs]
            rhs = -rhs
            sense = {LE: GE, GE: LE, EQ: EQ}[sense]
        rows.append((coeffs, sense, rhs))

    n_slack = sum(1 for _, s, _ in rows if s != EQ)
    n_art = sum(1 for _, s, _ in rows if s != LE)
    width = n + n_slack + n_art
    T, basis = [], []
    si, ai = n, n + n_slack
    artificial = set()
    for coeffs, sense, rhs in rows:
        row = coeffs + [Fraction(0)] * (width - n) + [rhs]
        if sense == LE:
            row[si] = Fraction(1)
            basis.append(si)
            si += 1
        else:
            if sense == GE:
                row[si] = Fraction(-1)
                si += 1
            row[ai] = Fraction(1)
            basis.append(ai)
            artificial.add(ai)
            ai += 1
        T.append(row)

    if artificial:
        cost1 = [Fraction(int(j in artificial)) for j in range(width)]
        _simplex(T, basis, cost1, range(width))
        if sum(T[i][-1] for i, b in enumerate(basis) if b in artificial) != 0:
            return LPResult("infeasible")
        # drive zero-level artificials out of the basis; drop redundant rows
        i = 0
        while i < len(T):
            if basis[i] in artificial:
                col = next((j for j in range(n + n_slack) if T[i][j] != 0), None)
                if col is None:
                    del T[i]
                    del basis[i]
                    continue
                _pivot(T, basis, i, col)
            i += 1

    allowed = range(n + n_slack)
    if objective is not None:
        cost = [as_fraction(c) for c in objective] + [Fraction(0)] * (width - n)
        if not _simplex(T, basis, cost, allowed):
            return LPResult("unbounded")
    x = [Fraction(0)] * width
    for i, b in enumerate(basis):
        x[b] = T[i][-1]
    sol = tuple(x[:n])
    value = None
    if objective is not None:
        value = sum((as_fraction(c) * v for c, v in zip(objective, sol)), Fraction(0))
    return LPResult("optimal", sol, value)


def _to_primitive_int(v) -> tuple[int, ...]:
    ints, _ = clear_denominators(v)
    g = 0
    for a in ints:
        g = gcd(g, a)
    return tuple(a // g for a in ints) if g else ints


def _expand(row, mode: Mode):
    # LAURENT variables are free: alpha = p - q with p, q >= 0
    row = [as_fraction(a) for a in row]
    return row + [-a for a in row] if mode is Mode.LAURENT else row


def _collapse(x, n: int, mode: Mode):
    return [x[i] - x[n + i] for i in range(n)] if mode is Mode.LAURENT else list(x[:n])


def strict_cone_feasible(strict_rows: Sequence[Sequence], domain: RingDomain) -> Optional[tuple[int, ...]]:
    """Find a nonzero lattice vector ``a`` in the domain with ``<r, a> > 0`` for every row.

    The strict homogeneous system is solved as ``<r, a> >= 1`` (any strict
    solution rescales to one of these), and the rational solution is cleared
    to a primitive integer vector. Returns ``None`` when no solution exists.
    """
    n = domain.n
    for r in strict_rows:
        if len(r) != n:
            raise ValueError(f"row {r!r} does not have length {n}")
    if not strict_rows:
        return tuple(int(i == 0) for i in range(n))
    nv = 2 * n if domain.mode is Mode.LAURENT else n
    res = solve_lp(nv, [(_expand(r, domain.mode), GE, 1) for r in strict_rows])
    if res.status != "optimal":
        return None
    return _to_primitive_int(_collapse(res.x, n, domain.mode))


def closed_orthant_feasible(rows: Sequence[Sequence], n: int) -> Optional[tuple[int, ...]]:
    """Find ``a`` in the closed positive orthant, ``a != 0``, with ``<r, a> >= 0`` for all rows.

    Nonzero-ness is imposed by normalising ``sum(a) = 1``.
    """
    cons = [([as_fraction(a) for a in r], GE, 0) for r in rows]
    cons.append(([1] * n, EQ, 1))
    res = solve_lp(n, cons)
    if res.status != "optimal":
        return None
    return _to_primitive_int(res.x)


def maximize_coordinate(n: int, constraints, direction: Sequence) -> LPResult:
    """Maximise ``<direction, x>`` over free ``x`` subject to ``constraints``."""
    cons = [(_expand(c, Mode.LAURENT), s, b) for c, s, b in constraints]
    obj = _expand([-as_fraction(d) for d in direction], Mode.LAURENT)
    res = solve_lp(2 * n, cons, obj)
    if res.status != "optimal":
        return res
    return LPResult("optimal", tuple(_collapse(res.x, n, Mode.LAURENT)), -res.value)

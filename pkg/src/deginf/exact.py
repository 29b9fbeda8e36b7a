"""Exact rational helpers: primitive lattice vectors and rational matrices.

Rationals are :class:`fractions.Fraction` throughout; lattice vectors are
plain tuples of ``int``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import DimensionMismatch, Singular, ZeroVector

LatticeVector = tuple  # tuple[int, ...]


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass int, str or Fraction")
    return Fraction(x)


def clear_denominators(v: Iterable) -> tuple[tuple[int, ...], int]:
    """Return ``(ints, m)`` with ``ints = m * v`` and ``m`` the lcm of denominators."""
    v = [as_fraction(x) for x in v]
    m = 1
    for x in v:
        m = lcm(m, x.denominator)
    return tuple(int(x * m) for x in v), m


def primitive_vector(v: Sequence) -> tuple[LatticeVector, Fraction]:
    """Split a nonzero rational vector as ``scale * p`` with ``p`` primitive.

    >>> primitive_vector([Fraction(1, 3), Fraction(1, 2)])
    ((2, 3), Fraction(1, 6))
    """
    ints, m = clear_denominators(v)
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ZeroVector("cannot take the primitive form of the zero vector")
    return tuple(x // g for x in ints), Fraction(g, m)


def dot(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise DimensionMismatch(f"length {len(u)} vs {len(v)}")
    return sum((a * b for a, b in zip(u, v)), 0)


def det2(u: Sequence, v: Sequence):
    return u[0] * v[1] - u[1] * v[0]


class RationalMatrix:
    """Immutable dense matrix over the rationals."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Iterable[Iterable]):
        data = tuple(tuple(as_fraction(x) for x in row) for row in data)
        if not data or not data[0]:
            raise ValueError("matrix must have at least one row and column")
        width = len(data[0])
        if any(len(row) != width for row in data):
            raise ValueError("ragged matrix")
        self._data = data
        self.rows = len(data)
        self.cols = width

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, entries: Sequence) -> "RationalMatrix":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(zip(*self._data))

    def is_symmetric(self) -> bool:
        return self.is_square and self._data == self.transpose()._data

    def __matmul__(self, other):
        if isinstance(other, RationalMatrix):
            if self.cols != other.rows:
                raise DimensionMismatch(f"{self.rows}x{self.cols} @ {other.rows}x{other.cols}")
            cols = list(zip(*other._data))
            return RationalMatrix(
                [[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols] for r in self._data]
            )
        vec = [as_fraction(x) for x in other]
        if len(vec) != self.cols:
            raise DimensionMismatch("matrix-vector length mismatch")
        return tuple(sum((a * b for a, b in zip(r, vec)), Fraction(0)) for r in self._data)

    def __eq__(self, other):
        return isinstance(other, RationalMatrix) and self._data == other._data

    def __hash__(self):
        return hash(self._data)

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self._data)
        return f"RationalMatrix([{body}])"


def _integer_rows(M: RationalMatrix) -> tuple[list[list[int]], list[int]]:
    rows, scales = [], []
    for r in M.tolist():
        ints, m = clear_denominators(r)
        rows.append(list(ints))
        scales.append(m)
    return rows, scales


def bareiss_det(A: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by Bareiss elimination."""
    a = [list(r) for r in A]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        p = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            ri, rk = a[i], a[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * p - aik * rk[j]) // prev
        prev = p
    return sign * a[n - 1][n - 1] if n else 1


def determinant(M: RationalMatrix) -> Fraction:
    if not M.is_square:
        raise DimensionMismatch("determinant of a non-square matrix")
    rows, scales = _integer_rows(M)
    denom = 1
    for s in scales:
        denom *= s
    return Fraction(bareiss_det(rows), denom)


def matrix_invert(M: RationalMatrix) -> tuple[RationalMatrix, Fraction]:
    """Exact inverse and determinant by fraction-free Gauss-Jordan elimination.

    Rows are first cleared to integers (``A = S M`` with ``S`` diagonal), then
    ``[A | I]`` is reduced with Bareiss-style exact divisions so every
    intermediate entry stays an integer. At the end the left block is
    ``det(A) I`` and the right block is ``adj(A)``.

    Raises :class:`Singular` (carrying ``det = 0``) for singular input.
    """
    if not M.is_square:
        raise DimensionMismatch("inverse of a non-square matrix")
    n = M.rows
    rows, scales = _integer_rows(M)
    a = [rows[i] + [int(i == j) for j in range(n)] for i in range(n)]
    sign, prev = 1, 1
    for k in range(n):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                raise Singular("matrix is singular", det=Fraction(0))
        p = a[k][k]
        rk = a[k]
        for i in range(n):
            if i == k:
                continue
            ri = a[i]
            aik = ri[k]
            for j in range(2 * n):
                if j != k:
                    ri[j] = (ri[j] * p - aik * rk[j]) // prev
            ri[k] = 0
        prev = p
    # left block is now diag(p, ..., p) with p = det(P A), P the row permutation
    detA = a[0][0]
    scale_prod = 1
    for s in scales:
        scale_prod *= s
    det = Fraction(sign * detA, scale_prod)
    # A^{-1} = right block / detA; M^{-1} = A^{-1} S
    inv = [[Fraction(a[i][n + j] * scales[j], detA) for j in range(n)] for i in range(n)]
    return RationalMatrix(inv), det


def cofactor_det(M: RationalMatrix) -> Fraction:
    """Laplace expansion; an independent cross-check for small matrices."""
    m = M.tolist()

    def rec(rows: list[list[Fraction]]) -> Fraction:
        if len(rows) == 1:
            return rows[0][0]
        total = Fraction(0)
        for j, x in enumerate(rows[0]):
            if x == 0:
                continue
            minor = [r[:j] + r[j + 1:] for r in rows[1:]]
            total += (-1) ** j * x * rec(minor)
        return total

    if not M.is_square:
        raise DimensionMismatch("determinant of a non-square matrix")
    return rec(m)

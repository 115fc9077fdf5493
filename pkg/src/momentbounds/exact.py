"""Exact integer and rational primitives shared by the rest of the package.

Every quantity that feeds a floor, a sign test or an equality test is kept
as a stdlib Fraction (re-exported as ``Rational``); floats never enter the
core. Determinants go through fraction-free Bareiss elimination on integer
matrices after clearing denominators row by row.
"""

from __future__ import annotations

import math
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

Rational = Fraction

__all__ = [
    "Rational",
    "as_rational",
    "binomial",
    "stirling_second",
    "stirling_first_signed",
    "det_int",
    "det_affine",
    "solve_linear",
    "invert_matrix",
    "sqrt_rational",
    "format_sig",
]


def as_rational(value) -> Fraction:
    """Coerce to Fraction, rejecting floats (binary floats silently corrupt
    exact arithmetic; pass strings or Fractions instead)."""
    if isinstance(value, float):
        raise TypeError(
            "refusing float %r: pass a Fraction, int or string such as '1/3' or '0.1'"
            % (value,)
        )
    return Fraction(value)


def binomial(n: int, k: int) -> int:
    """C(n, k); 0 when k > n, error on negative arguments."""
    return math.comb(n, k)


@lru_cache(maxsize=None)
def stirling_second(j: int, i: int) -> int:
    """Stirling number of the second kind S(j, i): partitions of a j-set
    into i nonempty blocks. S(j,i) = i*S(j-1,i) + S(j-1,i-1)."""
    if j < 0 or i < 0:
        raise ValueError("arguments must be nonnegative")
    if j == i:
        return 1
    if i == 0 or i > j:
        return 0
    return i * stirling_second(j - 1, i) + stirling_second(j - 1, i - 1)


@lru_cache(maxsize=None)
def stirling_first_signed(j: int, i: int) -> int:
    """Signed Stirling number of the first kind s(j, i): the coefficient of
    x^i in the falling factorial x(x-1)...(x-j+1)."""
    if j < 0 or i < 0:
        raise ValueError("arguments must be nonnegative")
    if j == i:
        return 1
    if i == 0 or i > j:
        return 0
    return stirling_first_signed(j - 1, i - 1) - (j - 1) * stirling_first_signed(j - 1, i)


def det_int(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by fraction-free Bareiss
    elimination. Exact; all intermediate divisions are exact by construction."""
    a = [list(row) for row in rows]
    m = len(a)
    if any(len(row) != m for row in a):
        raise ValueError("matrix must be square")
    if m == 0:
        return 1
    sign = 1
    prev = 1
    for col in range(m - 1):
        pivot_row = next((r for r in range(col, m) if a[r][col] != 0), None)
        if pivot_row is None:
            return 0
        if pivot_row != col:
            a[col], a[pivot_row] = a[pivot_row], a[col]
            sign = -sign
        pivot = a[col][col]
        for r in range(col + 1, m):
            for c in range(col + 1, m):
                a[r][c] = (a[r][c] * pivot - a[r][col] * a[col][c]) // prev
            a[r][col] = 0
        prev = pivot
    return sign * a[m - 1][m - 1]


def det_affine(points: Sequence[Sequence]) -> Fraction:
    """Affine determinant of m points in (m-1)-space: det of the m x m matrix
    whose row i is (1, p_i1, ..., p_i,m-1). Sign tells which side of the
    affine hull of the other points a point lies on; zero means affinely
    dependent."""
    m = len(points)
    pts = [[as_rational(x) for x in p] for p in points]
    if any(len(p) != m - 1 for p in pts):
        raise ValueError("need m points of dimension m-1")
    scale = 1
    int_rows: list[list[int]] = []
    for p in pts:
        row = [Fraction(1)] + p
        l = math.lcm(*(x.denominator for x in row))
        int_rows.append([int(x * l) for x in row])
        scale *= l
    return Fraction(det_int(int_rows), scale)


def solve_linear(
    matrix: Sequence[Sequence], rhs: Sequence
) -> list[Fraction] | None:
    """Solve a square exact linear system by Gaussian elimination.
    Returns None when the matrix is singular."""
    m = len(matrix)
    a = [[as_rational(x) for x in row] + [as_rational(b)] for row, b in zip(matrix, rhs)]
    if any(len(row) != m + 1 for row in a):
        raise ValueError("matrix must be square and match the rhs")
    for col in range(m):
        pivot_row = next((r for r in range(col, m) if a[r][col] != 0), None)
        if pivot_row is None:
            return None
        a[col], a[pivot_row] = a[pivot_row], a[col]
        pivot = a[col][col]
        a[col] = [x / pivot for x in a[col]]
        for r in range(m):
            if r != col and a[r][col] != 0:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return [a[r][m] for r in range(m)]


def invert_matrix(matrix: Sequence[Sequence]) -> list[list[Fraction]] | None:
    """Exact inverse via Gauss-Jordan; None when singular."""
    m = len(matrix)
    a = [[as_rational(x) for x in row] for row in matrix]
    if any(len(row) != m for row in a):
        raise ValueError("matrix must be square")
    aug = [row + [Fraction(int(i == j)) for j in range(m)] for i, row in enumerate(a)]
    for col in range(m):
        pivot_row = next((r for r in range(col, m) if aug[r][col] != 0), None)
        if pivot_row is None:
            return None
        aug[col], aug[pivot_row] = aug[pivot_row], aug[col]
        pivot = aug[col][col]
        aug[col] = [x / pivot for x in aug[col]]
        for r in range(m):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return [row[m:] for row in aug]


def sqrt_rational(value, digits: int = 30) -> tuple[Fraction, bool]:
    """Square root of a nonnegative rational.

    Returns (root, True) exactly when the input is a perfect rational square,
    otherwise (approximation, False) where the approximation is below the true
    root by less than 10**-digits.
    """
    q = as_rational(value)
    if q < 0:
        raise ValueError("square root of a negative rational")
    num, den = q.numerator, q.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd), True
    scale = 10**digits
    return Fraction(math.isqrt(num * den * scale * scale), den * scale), False


def format_sig(value, digits: int = 12) -> str:
    """Render a rational as a decimal string with the given number of
    significant digits. Deterministic; used for all human-facing decimals."""
    q = as_rational(value)
    if q == 0:
        return "0"
    with localcontext() as ctx:
        ctx.prec = digits
        d = Decimal(q.numerator) / Decimal(q.denominator)
    return str(d)

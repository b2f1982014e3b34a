"""Exact linear algebra: fraction-free elimination and polynomial fitting.

The interpolation pipeline must never touch floating point, so systems are
solved by Bareiss elimination over integers (rational input rows are cleared
of denominators first) followed by exact back substitution.
"""
from __future__ import annotations

import math
from fractions import Fraction

from .core import RatPoly


class SingularSystemError(ValueError):
    """The linear system has no unique solution."""


def _clear_row(row, rhs):
    scale = math.lcm(*[Fraction(x).denominator for x in row + [rhs]])
    ints = [int(Fraction(x) * scale) for x in row]
    return ints, int(Fraction(rhs) * scale)


def solve_exact(matrix, rhs) -> list[Fraction]:
    """Solve a square system A x = b exactly.

    Accepts int or Fraction entries; raises SingularSystemError when the
    matrix is rank deficient.
    """
    n = len(matrix)
    if n == 0 or any(len(row) != n for row in matrix) or len(rhs) != n:
        raise ValueError("solve_exact: need a square system with matching rhs")
    aug = []
    for row, b in zip(matrix, rhs):
        ints, bi = _clear_row(list(row), b)
        aug.append(ints + [bi])

    # Bareiss: every intermediate entry stays an exact integer and the
    # division by the previous pivot is always exact.
    prev = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise SingularSystemError(f"singular at column {col}")
        if piv != col:
            aug[col], aug[piv] = aug[piv], aug[col]
        pivot = aug[col][col]
        for r in range(col + 1, n):
            row_r = aug[r]
            row_c = aug[col]
            factor = row_r[col]
            for c in range(col, n + 1):
                row_r[c] = (pivot * row_r[c] - factor * row_c[c]) // prev
        prev = pivot

    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = Fraction(aug[i][n])
        for j in range(i + 1, n):
            acc -= aug[i][j] * x[j]
        if aug[i][i] == 0:
            raise SingularSystemError(f"zero pivot in row {i}")
        x[i] = acc / aug[i][i]
    return x


def fit_polynomial(points) -> RatPoly:
    """Unique polynomial of degree < len(points) through the given (x, y)."""
    pts = [(Fraction(x), Fraction(y)) for x, y in points]
    xs = [x for x, _ in pts]
    if len(set(xs)) != len(xs):
        raise ValueError("fit_polynomial: x values must be distinct")
    # Newton divided differences, then expansion to monomial coefficients.
    coeffs = [y for _, y in pts]
    for level in range(1, len(pts)):
        for i in range(len(pts) - 1, level - 1, -1):
            coeffs[i] = (coeffs[i] - coeffs[i - 1]) / (xs[i] - xs[i - level])
    poly = RatPoly.zero()
    basis = RatPoly.const(1)
    for i, c in enumerate(coeffs):
        poly = poly + basis.scale(c)
        basis = basis * RatPoly([-xs[i], 1])
    return poly

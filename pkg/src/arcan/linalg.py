"""Exact dense linear solve over the rationals (fraction-free elimination).

Sized for interpolation systems of a few dozen unknowns.  Rows are scaled
to integers, triangularized by Bareiss's fraction-free scheme (every
division is exact, keeping entries at determinant-minor size instead of
blowing up), then back-substituted in rational arithmetic.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .errors import SingularSystem


def solve_exact(rows: Sequence[Sequence], rhs: Sequence) -> list[Fraction]:
    """Solve A x = b exactly; entries may be ints or Fractions."""
    m = len(rows)
    if any(len(r) != m for r in rows) or len(rhs) != m:
        raise ValueError("need a square system with matching right-hand side")

    aug = []
    for row, b in zip(rows, rhs):
        entries = [Fraction(v) for v in row] + [Fraction(b)]
        scale = math.lcm(*(e.denominator for e in entries))
        aug.append([int(e * scale) for e in entries])

    prev = 1
    for col in range(m):
        pivot_row = next((r for r in range(col, m) if aug[r][col] != 0), None)
        if pivot_row is None:
            raise SingularSystem(f"no pivot in column {col}")
        if pivot_row != col:
            aug[col], aug[pivot_row] = aug[pivot_row], aug[col]
        pivot = aug[col][col]
        for r in range(col + 1, m):
            row_r, row_c = aug[r], aug[col]
            factor = row_r[col]
            for c in range(col + 1, m + 1):
                row_r[c] = (pivot * row_r[c] - factor * row_c[c]) // prev
            row_r[col] = 0
        prev = pivot

    x: list[Fraction] = [Fraction(0)] * m
    for r in range(m - 1, -1, -1):
        acc = Fraction(aug[r][m])
        for c in range(r + 1, m):
            acc -= aug[r][c] * x[c]
        x[r] = acc / aug[r][r]
    return x

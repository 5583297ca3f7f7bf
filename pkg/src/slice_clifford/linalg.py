"""Fraction-free (Bareiss) elimination over the integers.

Rational input matrices are cleared row by row to integer matrices first;
elimination itself never forms a fraction, so intermediate entries stay
exact integers bounded by minors of the input.
"""

from __future__ import annotations

from math import lcm
from typing import Sequence

from .exact_scalar import Rational, as_rational


def _integer_rows(matrix: Sequence[Sequence]) -> list[list[int]]:
    out = []
    for row in matrix:
        row = [as_rational(v) for v in row]
        den = lcm(*(int(v.denominator) for v in row)) if row else 1
        out.append([int(v * den) for v in row])
    return out


def bareiss_echelon(matrix: Sequence[Sequence]) -> tuple[list[list[int]], list[int]]:
    """Row echelon form by Bareiss' fraction-free elimination.

    Returns the integer echelon matrix and the list of pivot columns.
    """
    rows = _integer_rows(matrix)
    if not rows:
        return [], []
    n_rows, n_cols = len(rows), len(rows[0])
    pivots: list[int] = []
    prev = 1
    r = 0
    for col in range(n_cols):
        if r == n_rows:
            break
        swap = next((i for i in range(r, n_rows) if rows[i][col]), None)
        if swap is None:
            continue
        rows[r], rows[swap] = rows[swap], rows[r]
        piv = rows[r][col]
        for i in range(r + 1, n_rows):
            lead = rows[i][col]
            rows[i] = [(piv * rows[i][j] - lead * rows[r][j]) // prev for j in range(n_cols)]
        prev = piv
        pivots.append(col)
        r += 1
    return rows, pivots


def rank(matrix: Sequence[Sequence]) -> int:
    return len(bareiss_echelon(matrix)[1])


def nullspace(matrix: Sequence[Sequence], n_cols: int | None = None) -> list[list[Rational]]:
    """Basis of the right kernel ``{v : M v = 0}`` with integer entries."""
    if not matrix:
        if n_cols is None:
            raise ValueError("n_cols required for an empty matrix")
        return [[Rational(int(i == j)) for i in range(n_cols)] for j in range(n_cols)]
    echelon, pivots = bareiss_echelon(matrix)
    width = len(echelon[0])
    free = [c for c in range(width) if c not in pivots]
    basis = []
    for f in free:
        v = [Rational(0)] * width
        v[f] = Rational(1)
        for i in reversed(range(len(pivots))):
            p = pivots[i]
            acc = sum((echelon[i][j] * v[j] for j in range(p + 1, width)), Rational(0))
            v[p] = -acc / echelon[i][p]
        den = lcm(*(int(x.denominator) for x in v))
        basis.append([x * den for x in v])
    return basis

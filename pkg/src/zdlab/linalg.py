"""Exact Gaussian elimination over the rationals.

Small and dependency-free on purpose: nullspace bases computed here serve as
the independent oracle against which theorem-driven classifications are
checked, so this path must not share code with the operator machinery and
must never round.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]


def _copy(mat: Sequence[Sequence[Fraction | int]]) -> Matrix:
    return [[Fraction(v) for v in row] for row in mat]


def rref(mat: Sequence[Sequence[Fraction | int]]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the list of pivot column indices."""
    m = _copy(mat)
    if not m:
        return m, []
    n_rows, n_cols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        pivot_row = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        pv = m[r][c]
        m[r] = [v / pv for v in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return m, pivots


def rank(mat: Sequence[Sequence[Fraction | int]]) -> int:
    return len(rref(mat)[1])


def nullspace(mat: Sequence[Sequence[Fraction | int]]) -> list[list[Fraction]]:
    """Basis of { x : mat @ x = 0 }, one vector per free column."""
    m = _copy(mat)
    if not m:
        return []
    n_cols = len(m[0])
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    basis: list[list[Fraction]] = []
    for free in range(n_cols):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * n_cols
        vec[free] = Fraction(1)
        for row_idx, pc in enumerate(pivots):
            vec[pc] = -reduced[row_idx][free]
        basis.append(vec)
    return basis


def left_nullspace(mat: Sequence[Sequence[Fraction | int]]) -> list[list[Fraction]]:
    """Basis of { y : y @ mat = 0 }."""
    m = _copy(mat)
    if not m:
        return []
    transposed = [list(col) for col in zip(*m)]
    return nullspace(transposed)

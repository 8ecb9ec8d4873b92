"""Exact linear algebra: fraction-free elimination over the integers/rationals and rank over GF(2)."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

from .errors import InconsistentDeckError, RankDeficientError


def _integer_rows(matrix: Sequence[Sequence]) -> tuple[list[list[int]], int]:
    """Scale each row to integers; also return the product of the scale factors."""
    out = []
    total = 1
    for row in matrix:
        den = 1
        for x in row:
            if isinstance(x, Fraction):
                den = lcm(den, x.denominator)
        out.append([int(x * den) for x in row])
        total *= den
    return out, total


def bareiss(matrix: Sequence[Sequence]) -> tuple[list[list[int]], int, int]:
    """Fraction-free row echelon form.

    Returns the echelon rows, the rank, and the sign of the row permutation.
    Pivots are the first nonzero entry at or below the current row.
    """
    a, _ = _integer_rows(matrix)
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    prev = 1
    rank = 0
    sign = 1
    for col in range(ncols):
        if rank == nrows:
            break
        piv = next((r for r in range(rank, nrows) if a[r][col]), None)
        if piv is None:
            continue
        if piv != rank:
            a[rank], a[piv] = a[piv], a[rank]
            sign = -sign
        p = a[rank][col]
        for r in range(rank + 1, nrows):
            ar = a[r]
            f = ar[col]
            for c in range(col, ncols):
                ar[c] = (p * ar[c] - f * a[rank][c]) // prev
        prev = p
        rank += 1
    return a, rank, sign


def determinant(matrix: Sequence[Sequence]):
    n = len(matrix)
    if n == 0:
        return 1
    rows, scale = _integer_rows(matrix)
    ech, rank, sign = bareiss(rows)
    if rank < n:
        return 0
    det = sign * ech[n - 1][n - 1]
    return det if scale == 1 else Fraction(det, scale)


def rank_q(matrix: Sequence[Sequence]) -> int:
    if not matrix:
        return 0
    return bareiss(matrix)[1]


def solve(matrix: Sequence[Sequence], rhs: Sequence) -> list[Fraction]:
    """Solve ``matrix @ x = rhs`` exactly, using every row.

    The leading square part must be nonsingular; surplus rows are checked
    for consistency.
    """
    n = len(matrix[0])
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    ech, rank, _ = bareiss(aug)
    pivots = [next(c for c in range(n + 1) if ech[r][c]) for r in range(rank)]
    coeff_rank = sum(1 for p in pivots if p < n)
    if coeff_rank < n:
        raise RankDeficientError("linear system is singular", n)
    if n in pivots:
        raise InconsistentDeckError("linear system is inconsistent")
    x = [Fraction(0)] * n
    for r in range(n - 1, -1, -1):
        row = ech[r]
        acc = Fraction(row[n]) - sum(row[c] * x[c] for c in range(r + 1, n))
        x[r] = acc / row[r]
    return x


def rank_f2(columns: Sequence[Sequence[int]]) -> int:
    """Rank over GF(2) of the matrix with the given columns."""
    basis: dict[int, int] = {}
    for col in columns:
        v = 0
        for i, x in enumerate(col):
            if x % 2:
                v |= 1 << i
        while v:
            top = v.bit_length() - 1
            if top in basis:
                v ^= basis[top]
            else:
                basis[top] = v
                break
    return len(basis)


def f2_relation(columns: Sequence[Sequence[int]]) -> list[int] | None:
    """First linear dependency among the columns over GF(2).

    Returns coefficients ``d`` (length ``r + 1``, ``d[r] = 1``) with
    ``sum d[k] * columns[k] = 0 (mod 2)`` where ``r`` is the first column
    index that is dependent on the earlier ones, or ``None``.
    """
    basis: dict[int, tuple[int, int]] = {}
    for r, col in enumerate(columns):
        v = 0
        for i, x in enumerate(col):
            if x % 2:
                v |= 1 << i
        combo = 1 << r
        while v:
            top = v.bit_length() - 1
            if top in basis:
                bv, bc = basis[top]
                v ^= bv
                combo ^= bc
            else:
                basis[top] = (v, combo)
                break
        else:
            return [combo >> k & 1 for k in range(r + 1)]
    return None

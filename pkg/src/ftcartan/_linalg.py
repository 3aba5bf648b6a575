"""Exact linear algebra over the rationals for small integer matrices.

Everything here works on tuples/lists of numbers coercible to
``fractions.Fraction``; no floating point is ever introduced.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence


def kernel_basis(rows: Sequence[Sequence[int]]) -> list[tuple[Fraction, ...]]:
    """Basis of the right kernel ``{v : rows . v = 0}`` as Fraction vectors."""
    m = [[Fraction(x) for x in row] for row in rows]
    n_rows = len(m)
    n_cols = len(m[0]) if n_rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        pivot_row = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n_cols
        v[fc] = Fraction(1)
        for pr, pc in enumerate(pivots):
            v[pc] = -m[pr][fc]
        basis.append(tuple(v))
    return basis


def solve(rows: Sequence[Sequence[int]], rhs: Sequence[int]) -> tuple[Fraction, ...] | None:
    """Solve the square system ``rows . x = rhs`` exactly; None if singular."""
    n = len(rows)
    m = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    for c in range(n):
        pivot_row = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pivot_row is None:
            return None
        m[c], m[pivot_row] = m[pivot_row], m[c]
        pv = m[c][c]
        m[c] = [x / pv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return tuple(m[i][n] for i in range(n))


def determinant(rows: Sequence[Sequence[int]]) -> Fraction:
    """Exact determinant by fraction-free-ish Gaussian elimination."""
    n = len(rows)
    m = [[Fraction(x) for x in row] for row in rows]
    det = Fraction(1)
    for c in range(n):
        pivot_row = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != c:
            m[c], m[pivot_row] = m[pivot_row], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det


def leading_principal_minors(rows: Sequence[Sequence]) -> list[Fraction]:
    """Determinants of the top-left k-by-k blocks, k = 1..n."""
    n = len(rows)
    return [determinant([row[: k + 1] for row in rows[: k + 1]]) for k in range(n)]


def coprime_integers(vec: Sequence[Fraction]) -> tuple[int, ...]:
    """Scale a rational vector to integers with gcd 1, preserving direction."""
    denom = lcm(*(Fraction(x).denominator for x in vec)) if vec else 1
    ints = [int(Fraction(x) * denom) for x in vec]
    g = gcd(*ints) if any(ints) else 1
    return tuple(x // g for x in ints)

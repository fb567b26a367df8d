"""Exact dense linear algebra over the rationals.

Small matrices only (harmonic-basis kernels, Gram matrices, membership
tests), so simple quadratic/cubic algorithms are fine.  Elimination on
integer matrices is fraction-free in the Bareiss style: every intermediate
entry stays an exact integer and each two-row update divides out the previous
pivot exactly.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]


def _to_fraction_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def _clear_denominators(rows: Matrix) -> list[list[int]]:
    out = []
    for row in rows:
        lcm = 1
        for x in row:
            lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
        out.append([int(x * lcm) for x in row])
    return out


def fraction_free_echelon(rows: Sequence[Sequence]) -> tuple[list[list[int]], list[int]]:
    """Bareiss echelon form of an integer matrix.

    Returns (echelon matrix, pivot column indices).  Rational input is scaled
    row-wise to integers first; row scaling does not change the row space or
    the kernel.
    """
    m = _clear_denominators(_to_fraction_matrix(rows))
    if not m:
        return [], []
    n_rows, n_cols = len(m), len(m[0])
    pivots: list[int] = []
    prev_pivot = 1
    r = 0
    for c in range(n_cols):
        pivot_row = None
        for i in range(r, n_rows):
            if m[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        if pivot_row != r:
            m[r], m[pivot_row] = m[pivot_row], m[r]
        pivot = m[r][c]
        for i in range(r + 1, n_rows):
            factor = m[i][c]
            for j in range(c, n_cols):
                # Bareiss update: division by the previous pivot is exact.
                m[i][j] = (m[i][j] * pivot - factor * m[r][j]) // prev_pivot
        pivots.append(c)
        prev_pivot = pivot
        r += 1
        if r == n_rows:
            break
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    _, pivots = fraction_free_echelon(rows)
    return len(pivots)


def nullspace(rows: Sequence[Sequence], n_cols: int | None = None) -> list[list[Fraction]]:
    """Exact basis of the right kernel.

    Back-substitution runs over Fractions on the integer echelon form; each
    kernel vector is rescaled to a primitive integer vector with a fixed sign
    convention (free coordinate = +1 before rescaling) so the basis is
    deterministic.
    """
    rows = _to_fraction_matrix(rows)
    if not rows:
        if n_cols is None:
            raise ValueError("empty matrix needs an explicit column count")
        return [
            [Fraction(1) if j == i else Fraction(0) for j in range(n_cols)]
            for i in range(n_cols)
        ]
    echelon, pivots = fraction_free_echelon(rows)
    n_cols = len(echelon[0])
    pivot_set = set(pivots)
    free_cols = [c for c in range(n_cols) if c not in pivot_set]
    basis: list[list[Fraction]] = []
    for free in free_cols:
        vec = [Fraction(0)] * n_cols
        vec[free] = Fraction(1)
        for r in range(len(pivots) - 1, -1, -1):
            c = pivots[r]
            s = sum(Fraction(echelon[r][j]) * vec[j] for j in range(c + 1, n_cols))
            vec[c] = -s / echelon[r][c]
        basis.append(_primitive(vec))
    return basis


def _primitive(vec: list[Fraction]) -> list[Fraction]:
    den_lcm = 1
    for x in vec:
        den_lcm = den_lcm * x.denominator // math.gcd(den_lcm, x.denominator)
    ints = [int(x * den_lcm) for x in vec]
    g = 0
    for v in ints:
        g = math.gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    return [Fraction(v) for v in ints]


def solve(rows: Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    """One exact solution of A x = b, or None if the system is inconsistent."""
    a = _to_fraction_matrix(rows)
    b = [Fraction(x) for x in rhs]
    if len(a) != len(b):
        raise ValueError("matrix and right-hand side sizes differ")
    if not a:
        return []
    n_rows, n_cols = len(a), len(a[0])
    aug = [a[i] + [b[i]] for i in range(n_rows)]
    echelon, pivots = fraction_free_echelon(aug)
    # A pivot in the rhs column means 0 = nonzero.
    if pivots and pivots[-1] == n_cols:
        return None
    x = [Fraction(0)] * n_cols
    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        s = sum(Fraction(echelon[r][j]) * x[j] for j in range(c + 1, n_cols))
        x[c] = (Fraction(echelon[r][n_cols]) - s) / echelon[r][c]
    return x


def invert(rows: Sequence[Sequence]) -> Matrix:
    """Exact inverse via Gauss-Jordan over Fractions; raises on singular input."""
    a = _to_fraction_matrix(rows)
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix must be square")
    aug = [a[i] + [Fraction(1) if j == i else Fraction(0) for j in range(n)] for i in range(n)]
    for c in range(n):
        pivot_row = None
        for r in range(c, n):
            if aug[r][c] != 0:
                pivot_row = r
                break
        if pivot_row is None:
            raise ZeroDivisionError("matrix is singular")
        if pivot_row != c:
            aug[c], aug[pivot_row] = aug[pivot_row], aug[c]
        pivot = aug[c][c]
        aug[c] = [x / pivot for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                factor = aug[r][c]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


def in_span(vectors: Sequence[Sequence], target: Sequence) -> bool:
    """Exact membership of target in the rational span of the given vectors."""
    if not vectors:
        return all(Fraction(x) == 0 for x in target)
    cols = [[Fraction(vec[i]) for vec in vectors] for i in range(len(target))]
    return solve(cols, target) is not None


def leading_principal_minors(rows: Sequence[Sequence]) -> list[Fraction]:
    """All leading principal minors, exactly (for definiteness tests)."""
    a = _to_fraction_matrix(rows)
    n = len(a)
    return [determinant([row[: k + 1] for row in a[: k + 1]]) for k in range(n)]


def determinant(rows: Sequence[Sequence]) -> Fraction:
    a = _to_fraction_matrix(rows)
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix must be square")
    det = Fraction(1)
    for c in range(n):
        pivot_row = None
        for r in range(c, n):
            if a[r][c] != 0:
                pivot_row = r
                break
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != c:
            a[c], a[pivot_row] = a[pivot_row], a[c]
            det = -det
        pivot = a[c][c]
        det *= pivot
        for r in range(c + 1, n):
            if a[r][c] != 0:
                factor = a[r][c] / pivot
                a[r] = [x - factor * y for x, y in zip(a[r], a[c])]
    return det

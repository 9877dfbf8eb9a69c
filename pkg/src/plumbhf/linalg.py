"""Exact integer linear algebra for small symmetric matrices.

Everything here works on lists of Python ints (or Fractions) so results are
exact regardless of size. Matrices are sequences of rows.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = Sequence[Sequence[int]]


def bareiss(matrix: Matrix) -> tuple[int, list[int]]:
    """Fraction-free elimination without pivoting.

    Returns ``(det, minors)`` where ``minors[k]`` is the leading principal
    minor of order ``k + 1``; the pivots of unpivoted Bareiss elimination are
    exactly these minors. A vanishing minor stops the sweep and the remaining
    minors are computed one by one.
    """
    a = [list(map(int, row)) for row in matrix]
    n = len(a)
    if n == 0:
        return 1, []
    minors = [a[0][0]]
    prev = 1
    for k in range(n - 1):
        pivot = a[k][k]
        if pivot == 0:
            minors += [leading_minor(matrix, j) for j in range(k + 2, n + 1)]
            return minors[-1], minors
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
        minors.append(a[k + 1][k + 1])
    return minors[-1], minors


def leading_minor(matrix: Matrix, order: int) -> int:
    sub = [list(row[:order]) for row in matrix[:order]]
    return det_bareiss(sub)


def det_bareiss(matrix: Matrix) -> int:
    """Determinant by Bareiss fraction-free elimination with row pivoting."""
    a = [list(map(int, row)) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact division is guaranteed by Sylvester's identity
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def adjugate(matrix: Matrix) -> list[list[int]]:
    """Integer adjugate via exact rational inversion (det * inverse)."""
    n = len(matrix)
    det = det_bareiss(matrix)
    if det == 0:
        raise ZeroDivisionError("matrix is singular")
    inv = rational_inverse(matrix)
    out = [[inv[i][j] * det for j in range(n)] for i in range(n)]
    for row in out:
        for x in row:
            assert x.denominator == 1
    return [[int(x) for x in row] for row in out]


def rational_inverse(matrix: Matrix) -> list[list[Fraction]]:
    """Gauss-Jordan inverse over the rationals."""
    n = len(matrix)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def hermite_rows(matrix: Matrix) -> list[list[int]]:
    """Upper-triangular Hermite basis of the row lattice of a nonsingular matrix.

    The result ``H`` spans the same lattice as the rows of ``matrix``, has
    positive diagonal, and ``0 <= H[i][j] < H[j][j]`` above each pivot.
    """
    rows = [list(map(int, r)) for r in matrix]
    n = len(rows)
    h: list[list[int]] = []
    pool = rows
    for col in range(n):
        # extended gcd sweep on column `col` among the remaining rows
        while True:
            nz = [r for r in pool if r[col] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            for r in nz[1:]:
                q = r[col] // piv[col]
                for j in range(n):
                    r[j] -= q * piv[j]
        nz = [r for r in pool if r[col] != 0]
        if not nz:
            raise ZeroDivisionError("matrix is singular")
        piv = nz[0]
        if piv[col] < 0:
            piv = [-x for x in piv]
        pool = [r for r in pool if r[col] == 0]
        h.append(piv)
    for i in range(n):
        for k in range(i):
            q = h[k][i] // h[i][i]
            if q:
                h[k] = [a - q * b for a, b in zip(h[k], h[i])]
    return h


def reduce_mod_hermite(vec: Sequence[int], h: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Canonical residue of ``vec`` modulo the lattice with Hermite basis ``h``."""
    v = list(vec)
    for i, row in enumerate(h):
        q = v[i] // row[i]
        if q:
            for j in range(i, len(v)):
                v[j] -= q * row[j]
    return tuple(v)

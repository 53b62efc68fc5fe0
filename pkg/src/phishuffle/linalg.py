"""Small dense exact linear algebra over the rationals (lists of Fractions)."""
from __future__ import annotations

from fractions import Fraction
from math import gcd


def identity(n: int) -> list:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(a: list) -> list:
    return [list(col) for col in zip(*a)] if a else []


def matmul(a: list, b: list) -> list:
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def inverse(a: list) -> list:
    """Exact inverse by fraction-free (Bareiss) Gauss-Jordan elimination.

    Rows are cleared of denominators first, so elimination runs on integers
    and every division is exact.  Raises ``ZeroDivisionError`` when singular.
    """
    n = len(a)
    rows = []
    for i, row in enumerate(a):
        row = [Fraction(x) for x in row]
        den = 1
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
        rows.append([int(x * den) for x in row] + [den if j == i else 0 for j in range(n)])
    prev = 1
    for k in range(n):
        piv = next((r for r in range(k, n) if rows[r][k] != 0), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        rows[k], rows[piv] = rows[piv], rows[k]
        pk = rows[k][k]
        rk = rows[k]
        for i in range(n):
            if i == k:
                continue
            ik = rows[i][k]
            rows[i] = [(pk * x - ik * y) // prev for x, y in zip(rows[i], rk)]
        prev = pk
    return [[Fraction(rows[i][n + j], rows[i][i]) for j in range(n)] for i in range(n)]


def rref(m: list) -> tuple:
    """Reduced row echelon form and pivot columns (Fractions)."""
    a = [[Fraction(x) for x in row] for row in m]
    rows = len(a)
    cols = len(a[0]) if a else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a[:r], pivots


def nullspace(m: list, ncols: int) -> list:
    """Basis of ``{x : m x = 0}``, one vector per free column."""
    if not m:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    red, pivots = rref(m)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis

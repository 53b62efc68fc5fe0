"""Brute-force reference implementations, sharing no code with the package engines."""
from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction


def interleavings(u: tuple, v: tuple) -> Counter:
    """u ш v by choosing which positions of the result come from u."""
    n = len(u) + len(v)
    out = Counter()
    for pos in itertools.combinations(range(n), len(u)):
        it_u, it_v = iter(u), iter(v)
        chosen = set(pos)
        out[tuple(next(it_u) if i in chosen else next(it_v) for i in range(n))] += 1
    return out


def is_lyndon_naive(w: tuple) -> bool:
    """Strictly smaller than every proper rotation (equivalent definition)."""
    return bool(w) and all(w < w[i:] + w[:i] for i in range(1, len(w)))


def lyndon_brute(k: int, n: int) -> list:
    words = [w for m in range(1, n + 1) for w in itertools.product(range(k), repeat=m)]
    return sorted((w for w in words if is_lyndon_naive(w)), key=lambda w: (len(w), w))


def longest_lyndon_suffix(w: tuple) -> tuple:
    for i in range(1, len(w)):
        if is_lyndon_naive(w[i:]):
            return w[i:]
    raise ValueError


def words_upto(k: int, n: int) -> list:
    return [w for m in range(n + 1) for w in itertools.product(range(k), repeat=m)]


def delta_q_naive(q, w: tuple) -> Counter:
    """Σ over covers I ∪ J = positions of q^{|I∩J|} w[I] ⊗ w[J], by enumerating subset pairs."""
    n = len(w)
    subsets = [s for m in range(n + 1) for s in itertools.combinations(range(n), m)]
    out = Counter()
    for i in subsets:
        for j in subsets:
            if set(i) | set(j) == set(range(n)):
                c = q ** len(set(i) & set(j)) if len(set(i) & set(j)) else 1
                out[(tuple(w[x] for x in i), tuple(w[x] for x in j))] += c
    return out


def stuffle_by_table(gamma: dict, u: tuple, v: tuple) -> Counter:
    """φ-stuffle from the defining recursion, using a plain dict table and Counters."""
    if not u:
        return Counter({v: 1})
    if not v:
        return Counter({u: 1})
    out = Counter()
    for w, c in stuffle_by_table(gamma, u, v[1:]).items():
        out[(v[0],) + w] += c
    for w, c in stuffle_by_table(gamma, u[1:], v).items():
        out[(u[0],) + w] += c
    for k, g in gamma.get((u[0], v[0]), {}).items():
        for w, c in stuffle_by_table(gamma, u[1:], v[1:]).items():
            out[(k,) + w] += g * c
    return Counter({w: c for w, c in out.items() if c})


def reverse_antipode(w: tuple) -> dict:
    return {tuple(reversed(w)): (-1) ** len(w)}


def mat_inverse_gauss(m: list) -> list:
    """Plain Gauss-Jordan over Fractions (reference for the fraction-free inverse)."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        p = next(r for r in range(c, n) if a[r][c])
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]

"""The PBW-Lyndon basis P_w, its dual basis S_w, and the transition matrices."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .freealg import Poly, conc, pairing
from .linalg import identity, inverse, matmul, transpose
from .products import shuffle
from .report import Report
from .scalars import QQ, Ring
from .words import (EMPTY, Alphabet, Word, is_lyndon, llex_key, lyndon_factorization,
                    standard_factorization, words_of_length)

_P_CACHE: dict = {}
_S_CACHE: dict = {}


def pbw_p(w: Word, alphabet: Alphabet, ring: Ring = QQ) -> Poly:
    """``P_w``: brackets on standard factorizations, products over the Lyndon factorization."""
    w = tuple(w)
    key = (alphabet, ring, w)
    hit = _P_CACHE.get(key)
    if hit is not None:
        return hit
    if len(w) <= 1:
        res = Poly({w: 1}, alphabet, ring)
    elif is_lyndon(w):
        s, r = standard_factorization(w)
        ps, pr = pbw_p(s, alphabet, ring), pbw_p(r, alphabet, ring)
        res = conc(ps, pr) - conc(pr, ps)
    else:
        res = Poly.one(alphabet, ring)
        for l, i in lyndon_factorization(w):
            pl = pbw_p(l, alphabet, ring)
            for _ in range(i):
                res = conc(res, pl)
    _P_CACHE[key] = res
    return res


def dual_s(w: Word, alphabet: Alphabet, ring: Ring = QQ) -> Poly:
    """``S_w``: ``x S_u`` for Lyndon ``xu``, divided shuffle powers otherwise."""
    w = tuple(w)
    key = (alphabet, ring, w)
    hit = _S_CACHE.get(key)
    if hit is not None:
        return hit
    if len(w) <= 1:
        res = Poly({w: 1}, alphabet, ring)
    elif is_lyndon(w):
        x = Poly({w[:1]: 1}, alphabet, ring)
        res = conc(x, dual_s(w[1:], alphabet, ring))
    else:
        res = Poly.one(alphabet, ring)
        denom = 1
        for l, i in lyndon_factorization(w):
            sl = dual_s(l, alphabet, ring)
            for _ in range(i):
                res = shuffle(res, sl)
            denom *= factorial(i)
        res = res / denom
    _S_CACHE[key] = res
    return res


@dataclass
class HomogeneousMatrix:
    degree: int
    words: list
    entries: list  # row-major, Fractions

    def row(self, w: Word) -> list:
        return self.entries[self.words.index(tuple(w))]

    def to_json(self, alphabet: Alphabet) -> dict:
        return {"degree": self.degree,
                "index": [alphabet.format_word(w) for w in self.words],
                "rows": [[QQ.format(x) for x in row] for row in self.entries]}


def homogeneous_words(alphabet: Alphabet, n: int) -> list:
    return sorted(words_of_length(len(alphabet), n), key=llex_key)


def _matrix(n: int, alphabet: Alphabet, family) -> HomogeneousMatrix:
    if n < 1:
        raise ValueError("degree must be at least 1")
    ws = homogeneous_words(alphabet, n)
    rows = []
    for u in ws:
        p = family(u, alphabet, QQ)
        rows.append([Fraction(p.coeff(v)) for v in ws])
    return HomogeneousMatrix(n, ws, rows)


def matrix_M(n: int, alphabet: Alphabet) -> HomogeneousMatrix:
    """``M[u][v] = <P_u | v>`` over the llex-sorted words of length n."""
    return _matrix(n, alphabet, pbw_p)


def matrix_N(n: int, alphabet: Alphabet) -> HomogeneousMatrix:
    """``N[u][v] = <S_u | v>``."""
    return _matrix(n, alphabet, dual_s)


def verify_duality(n_max: int, alphabet: Alphabet) -> Report:
    """``<S_u | P_v> = δ_{u,v}`` for equal-length words and ``N · tM = Id`` per degree."""
    rep = Report(f"duality up to length {n_max}")
    for n in range(1, n_max + 1):
        ws = homogeneous_words(alphabet, n)
        bad = None
        for u, v in itertools.product(ws, repeat=2):
            val = pairing(dual_s(u, alphabet), pbw_p(v, alphabet))
            if val != (1 if u == v else 0):
                bad = (u, v, val)
                break
        fw = alphabet.format_word
        rep.add(f"<S_u|P_v> = delta, degree {n} ({len(ws) ** 2} pairs)", bad is None,
                "" if bad is None else f"<S_{fw(bad[0])}|P_{fw(bad[1])}> = {bad[2]}")
        m, nn = matrix_M(n, alphabet), matrix_N(n, alphabet)
        prod = matmul(nn.entries, transpose(m.entries))
        rep.add(f"N * tM = Id, degree {n}", prod == identity(len(ws)))
        rep.add(f"N = (tM)^-1 by exact inversion, degree {n}",
                nn.entries == inverse(transpose(m.entries)))
    return rep


def verify_triangularity(n_max: int, alphabet: Alphabet) -> Report:
    """``P_w = w + (llex-greater words)``, ``S_w = w + (llex-smaller words)``, homogeneous."""
    rep = Report(f"triangularity up to length {n_max}")
    fw = alphabet.format_word
    for n in range(1, n_max + 1):
        for name, family, cmp in (("P", pbw_p, 1), ("S", dual_s, -1)):
            bad = None
            for w in homogeneous_words(alphabet, n):
                p = family(w, alphabet)
                if p.coeff(w) != 1:
                    bad = f"{name}_{fw(w)} has leading coefficient {p.coeff(w)}"
                else:
                    for v in p.terms:
                        if len(v) != n:
                            bad = f"{name}_{fw(w)} is not homogeneous ({fw(v)})"
                        elif v != w and (llex_key(v) > llex_key(w)) != (cmp > 0):
                            bad = f"{name}_{fw(w)} contains {fw(v)} on the wrong side"
                        if bad:
                            break
                if bad:
                    break
            rep.add(f"{name} triangular, degree {n}", bad is None, bad or "")
    return rep


def is_multihomogeneous_like(p: Poly, w: Word) -> bool:
    """Every monomial of ``p`` uses the same multiset of letters as ``w``."""
    target = sorted(w)
    return all(sorted(v) == target for v in p.terms)


__all__ = ["pbw_p", "dual_s", "HomogeneousMatrix", "matrix_M", "matrix_N", "verify_duality",
           "verify_triangularity", "homogeneous_words", "is_multihomogeneous_like"]

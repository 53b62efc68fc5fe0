"""Shuffle, phi-deformed stuffle and q-infiltration products with their coproducts.

Word-level engines return plain ``{word: coeff}`` dicts and are memoized
(shuffle globally, phi-stuffle per law object, infiltration per ``q``); the
public functions take and return :class:`~phishuffle.freealg.Poly` values.
"""
from __future__ import annotations

import itertools
import warnings
from functools import lru_cache
from typing import Callable, Optional

from .freealg import Poly, TensorPoly2, _add, _check_compatible, _prune
from .philaw import LawError, PhiLaw, TruncationWarning, check_condition_D
from .scalars import QQ, Ring, ring_of
from .words import EMPTY, Alphabet, Word


# word-level engines

@lru_cache(maxsize=None)
def shuffle_words(u: Word, v: Word) -> dict:
    """Integer coefficients of ``u ш v``; callers must not mutate the result."""
    if not u:
        return {v: 1}
    if not v:
        return {u: 1}
    x, y = u[0], v[0]
    acc: dict = {}
    for w, c in shuffle_words(u[1:], v).items():
        _add(acc, (x,) + w, c)
    for w, c in shuffle_words(u, v[1:]).items():
        _add(acc, (y,) + w, c)
    return acc


def stuffle_words(phi: PhiLaw, u: Word, v: Word) -> dict:
    """``u ш_phi v`` by the three-term recursion on first letters."""
    cache = phi._product_cache
    key = (u, v)
    hit = cache.get(key)
    if hit is not None:
        return hit
    if not u:
        res = {v: phi.ring.one}
    elif not v:
        res = {u: phi.ring.one}
    else:
        i, j = u[0], v[0]
        acc: dict = {}
        for w, c in stuffle_words(phi, u, v[1:]).items():
            _add(acc, (j,) + w, c)
        for w, c in stuffle_words(phi, u[1:], v).items():
            _add(acc, (i,) + w, c)
        row = phi(i, j)
        if row:
            rest = stuffle_words(phi, u[1:], v[1:])
            for k, g in row.items():
                for w, c in rest.items():
                    _add(acc, (k,) + w, g * c)
        elif (i, j) in phi.lost:
            names = phi.alphabet.names
            warnings.warn(f"{phi.name}: phi({names[i]},{names[j]}) is outside the alphabet; "
                          f"contraction term dropped", TruncationWarning, stacklevel=2)
        res = _prune(acc)
    cache[key] = res
    return res


@lru_cache(maxsize=None, typed=True)
def infiltration_words(q, u: Word, v: Word) -> dict:
    """``u ↑_q v``: shuffle recursion plus ``q x (u' ↑ v')`` on equal first letters."""
    one = ring_of(q).one
    if not u:
        return {v: one}
    if not v:
        return {u: one}
    x, y = u[0], v[0]
    acc: dict = {}
    for w, c in infiltration_words(q, u[1:], v).items():
        _add(acc, (x,) + w, c)
    for w, c in infiltration_words(q, u, v[1:]).items():
        _add(acc, (y,) + w, c)
    if x == y and q:
        for w, c in infiltration_words(q, u[1:], v[1:]).items():
            _add(acc, (x,) + w, q * c)
    return _prune(acc)


def _bilinear(p: Poly, q: Poly, word_law: Callable[[Word, Word], dict]) -> Poly:
    _check_compatible(p, q)
    acc: dict = {}
    for u, a in p.terms.items():
        for v, b in q.terms.items():
            ab = a * b
            for w, c in word_law(u, v).items():
                _add(acc, w, ab * c)
    return Poly(_prune({w: p.ring.coerce(c) for w, c in acc.items()}), p.alphabet, p.ring, _trusted=True)


# products on polynomials

def shuffle(p: Poly, q: Poly) -> Poly:
    return _bilinear(p, q, shuffle_words)


def stuffle_phi(phi: PhiLaw, p: Poly, q: Poly) -> Poly:
    if p.alphabet != phi.alphabet or p.ring != phi.ring:
        raise LawError("polynomial and law live over different alphabets or rings")
    return _bilinear(p, q, lambda u, v: stuffle_words(phi, u, v))


def infiltration(q, p: Poly, r: Poly) -> Poly:
    q = p.ring.coerce(q)
    return _bilinear(p, r, lambda u, v: infiltration_words(q, u, v))


def product_law(phi: Optional[PhiLaw]) -> Callable[[Word, Word], dict]:
    """Word-level product for a law; ``None`` or the zero law gives shuffle."""
    if phi is None or phi.is_zero:
        return shuffle_words
    if phi.q is not None:
        q = phi.q
        return lambda u, v: infiltration_words(q, u, v)
    return lambda u, v: stuffle_words(phi, u, v)


def multiply(phi: PhiLaw, p: Poly, q: Poly) -> Poly:
    """Product under a law; infiltration laws use the infiltration engine."""
    return _bilinear(p, q, product_law(phi))


# explicit coproducts

def _tensor(acc: dict, alphabet: Alphabet, ring: Ring) -> TensorPoly2:
    return TensorPoly2(_prune({k: ring.coerce(c) for k, c in acc.items()}), alphabet, ring, _trusted=True)


def delta_conc(p: Poly) -> TensorPoly2:
    """Deconcatenation: sum over the cuts ``w = uv``."""
    acc: dict = {}
    for w, c in p.terms.items():
        for i in range(len(w) + 1):
            _add(acc, (w[:i], w[i:]), c)
    return _tensor(acc, p.alphabet, p.ring)


def delta_shuffle(p: Poly) -> TensorPoly2:
    """Unshuffle: sum over complementary position sets ``I + J``."""
    acc: dict = {}
    for w, c in p.terms.items():
        n = len(w)
        for mask in range(1 << n):
            left = tuple(w[i] for i in range(n) if mask >> i & 1)
            right = tuple(w[i] for i in range(n) if not mask >> i & 1)
            _add(acc, (left, right), c)
    return _tensor(acc, p.alphabet, p.ring)


def delta_q(q, p: Poly) -> TensorPoly2:
    """Sum over ``I ∪ J = [1..n]`` weighted by ``q^{|I ∩ J|}``."""
    q = p.ring.coerce(q)
    acc: dict = {}
    for w, c in p.terms.items():
        n = len(w)
        # each position goes left only, right only, or both
        for choice in itertools.product((0, 1, 2), repeat=n):
            left = tuple(w[i] for i in range(n) if choice[i] != 1)
            right = tuple(w[i] for i in range(n) if choice[i] != 0)
            both = sum(1 for t in choice if t == 2)
            coeff = c
            for _ in range(both):
                coeff = coeff * q
            if coeff:
                _add(acc, (left, right), coeff)
    return _tensor(acc, p.alphabet, p.ring)


# multiplicative coproducts given on letters

class Coproduct:
    """Conc-multiplicative coproduct fixed by ``Δ(x) = x⊗1 + 1⊗x + extra(x)``.

    ``extra`` maps a letter index to ``{(u, v): coeff}``.  ``dual_product`` is
    the word-level product dual to this coproduct when one is known.
    """

    def __init__(self, alphabet: Alphabet, ring: Ring, extra: dict, name: str,
                 dual_product: Optional[Callable[[Word, Word], dict]] = None):
        self.alphabet = alphabet
        self.ring = ring
        self.name = name
        self.extra = {i: {k: ring.coerce(c) for k, c in terms.items() if c}
                      for i, terms in extra.items()}
        self.dual_product = dual_product
        self._cache: dict = {EMPTY: {(EMPTY, EMPTY): ring.one}}
        self._key = (alphabet, ring, frozenset((i, frozenset(t.items())) for i, t in self.extra.items() if t))

    def __eq__(self, other):
        return isinstance(other, Coproduct) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"Coproduct({self.name})"

    def letter(self, i: int) -> dict:
        one = self.ring.one
        out = {((i,), EMPTY): one, (EMPTY, (i,)): one}
        for k, c in self.extra.get(i, {}).items():
            out[k] = out.get(k, self.ring.zero) + c
        return _prune(out)

    def word(self, w: Word) -> dict:
        """``Δ(w)`` as ``{(u, v): coeff}``, built letter by letter."""
        hit = self._cache.get(w)
        if hit is not None:
            return hit
        head = self.word(w[:-1])
        last = self.letter(w[-1])
        acc: dict = {}
        for (u, v), a in head.items():
            for (x, y), b in last.items():
                _add(acc, (u + x, v + y), a * b)
        res = _prune(acc)
        self._cache[w] = res
        return res

    def reduced_word(self, w: Word) -> dict:
        return {k: c for k, c in self.word(w).items() if k[0] and k[1]}

    def __call__(self, p: Poly) -> TensorPoly2:
        if p.ring != self.ring or p.alphabet != self.alphabet:
            raise LawError("polynomial and coproduct live over different alphabets or rings")
        acc: dict = {}
        for w, c in p.terms.items():
            for k, d in self.word(w).items():
                _add(acc, k, c * d)
        return TensorPoly2(_prune(acc), self.alphabet, self.ring, _trusted=True)

    def grading_compatible(self) -> bool:
        """Both legs of every extra term are nonempty and weigh less in total than the letter."""
        wt = self.alphabet.weight
        for i, terms in self.extra.items():
            for (u, v) in terms:
                if not u or not v or wt(u) + wt(v) > wt((i,)):
                    return False
        return True


def shuffle_coproduct(alphabet: Alphabet, ring: Ring = QQ) -> Coproduct:
    return Coproduct(alphabet, ring, {}, "shuffle", shuffle_words)


def phi_coproduct(phi: PhiLaw) -> Coproduct:
    """Dual coproduct of ``ш_phi``: ``Δ(y_s) = y_s⊗1 + 1⊗y_s + Σ γ_{n,m}^s y_n⊗y_m``."""
    cached = getattr(phi, "_coproduct_obj", None)
    if cached is not None:
        return cached
    if not check_condition_D(phi):
        raise LawError(f"{phi.name} fails the finite decomposition condition")
    extra: dict = {}
    for (n, m), row in phi.gamma.items():
        for s, c in row.items():
            terms = extra.setdefault(s, {})
            terms[((n,), (m,))] = terms.get(((n,), (m,)), phi.ring.zero) + c
    cop = Coproduct(phi.alphabet, phi.ring, extra, phi.name, product_law(phi))
    phi._coproduct_obj = cop
    return cop


def q_coproduct(q, alphabet: Alphabet, ring: Ring = QQ) -> Coproduct:
    q = ring.coerce(q)
    extra = {i: {((i,), (i,)): q} for i in range(len(alphabet))}
    return Coproduct(alphabet, ring, extra, f"infiltration {ring.format(q)}",
                     lambda u, v: infiltration_words(q, u, v))


def delta_phi(phi: PhiLaw, p: Poly) -> TensorPoly2:
    return phi_coproduct(phi)(p)

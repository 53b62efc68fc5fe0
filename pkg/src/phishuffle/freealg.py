"""Sparse noncommutative polynomials and their tensor squares/cubes.

A :class:`Poly` is a finitely supported map from words to scalars of one
:class:`~phishuffle.scalars.Ring` over one :class:`~phishuffle.words.Alphabet`.
Zero coefficients are never stored, so equality is plain dict equality.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .scalars import QQ, Ring, RingMismatchError, ScalarParseError
from .words import EMPTY, Alphabet, AlphabetMismatchError, Word, WordParseError, llex_key


class PolyParseError(ValueError):
    def __init__(self, text: str, position: int, reason: str):
        super().__init__(f"cannot parse {text!r} at position {position}: {reason}")
        self.text = text
        self.position = position


def _check_compatible(a, b):
    if a.ring != b.ring:
        raise RingMismatchError(f"ring mismatch: {a.ring} vs {b.ring}")
    if a.alphabet != b.alphabet:
        raise AlphabetMismatchError("alphabet mismatch")


class _Sparse:
    """Shared machinery for maps key -> scalar with zero pruning."""

    __slots__ = ("terms", "alphabet", "ring")

    def __init__(self, terms: Mapping, alphabet: Alphabet, ring: Ring = QQ, *, _trusted=False):
        self.alphabet = alphabet
        self.ring = ring
        if _trusted:
            self.terms = terms
        else:
            self.terms = {k: ring.coerce(c) for k, c in terms.items() if c}
            self.terms = {k: c for k, c in self.terms.items() if c}

    def _new(self, terms):
        return type(self)(terms, self.alphabet, self.ring, _trusted=True)

    @classmethod
    def zero(cls, alphabet: Alphabet, ring: Ring = QQ):
        return cls({}, alphabet, ring, _trusted=True)

    def __eq__(self, other):
        if not isinstance(other, type(self)):
            return NotImplemented
        return self.ring == other.ring and self.alphabet == other.alphabet and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def coeff(self, key):
        return self.terms.get(key, self.ring.zero)

    def __add__(self, other):
        if not isinstance(other, type(self)):
            return NotImplemented
        _check_compatible(self, other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            s = c if s is None else s + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return self._new(out)

    def __neg__(self):
        return self._new({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, type(self)):
            return NotImplemented
        return self + (-other)

    def scale(self, c):
        c = self.ring.coerce(c)
        if not c:
            return self._new({})
        out = {}
        for k, v in self.terms.items():
            p = c * v
            if p:
                out[k] = p
        return self._new(out)

    def __rmul__(self, c):
        return self.scale(c)

    def __truediv__(self, n):
        if not isinstance(n, (int, Fraction)):
            return NotImplemented
        return self.scale(Fraction(1) / Fraction(n))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: self._sort_key(kv[0]))


class Poly(_Sparse):
    """Element of the free algebra ``A<X>``; ``p * q`` is concatenation."""

    __slots__ = ()

    @staticmethod
    def _sort_key(w):
        return llex_key(w)

    @classmethod
    def word(cls, w: Word, alphabet: Alphabet, ring: Ring = QQ, coeff=1):
        alphabet.check(w)
        return cls({tuple(w): coeff}, alphabet, ring)

    @classmethod
    def one(cls, alphabet: Alphabet, ring: Ring = QQ):
        return cls({EMPTY: ring.one}, alphabet, ring, _trusted=True)

    @classmethod
    def parse(cls, text: str, alphabet: Alphabet, ring: Ring = QQ) -> "Poly":
        return parse_poly(text, alphabet, ring)

    def __mul__(self, other):
        if isinstance(other, Poly):
            return conc(self, other)
        return self.scale(other)

    def words(self):
        return [w for w, _ in self.sorted_terms()]

    def degree(self) -> int:
        return max((self.alphabet.weight(w) for w in self.terms), default=-1)

    def map_words(self, f: Callable[[Word], "Poly"]) -> "Poly":
        """Linear extension of a word -> Poly map."""
        acc: dict = {}
        for w, c in self.terms.items():
            _accumulate(acc, f(w).terms, c)
        return Poly(_prune(acc), self.alphabet, self.ring, _trusted=True)

    def truncate(self, bound: int) -> "Poly":
        return self._new({w: c for w, c in self.terms.items() if self.alphabet.weight(w) <= bound})

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"


class TensorPoly2(_Sparse):
    """Element of ``A<X> (x) A<X>``; keys are ``(u, v)`` word pairs."""

    __slots__ = ()

    @staticmethod
    def _sort_key(k):
        return (len(k[0]) + len(k[1]), llex_key(k[0]), llex_key(k[1]))

    @classmethod
    def pure(cls, p: Poly, q: Poly) -> "TensorPoly2":
        _check_compatible(p, q)
        acc = {}
        for u, a in p.terms.items():
            for v, b in q.terms.items():
                c = a * b
                if c:
                    acc[(u, v)] = acc.get((u, v), 0) + c
        return cls(_prune(acc), p.alphabet, p.ring, _trusted=True)

    def map_legs(self, f: Callable[[Word], Poly], g: Callable[[Word], Poly]) -> "TensorPoly2":
        """``(f (x) g)`` applied termwise."""
        acc: dict = {}
        for (u, v), c in self.terms.items():
            fu, gv = f(u), g(v)
            for a, ca in fu.terms.items():
                for b, cb in gv.terms.items():
                    _add(acc, (a, b), c * ca * cb)
        return TensorPoly2(_prune(acc), self.alphabet, self.ring, _trusted=True)

    def contract(self) -> Poly:
        """Concatenate the two legs: ``conc`` applied to the tensor."""
        acc: dict = {}
        for (u, v), c in self.terms.items():
            _add(acc, u + v, c)
        return Poly(_prune(acc), self.alphabet, self.ring, _trusted=True)

    def reduced(self) -> "TensorPoly2":
        """Drop the terms with an empty leg."""
        return self._new({k: c for k, c in self.terms.items() if k[0] and k[1]})

    def __mul__(self, other):
        if isinstance(other, TensorPoly2):
            return tensor_mul2(self, other, conc_words, conc_words)
        return self.scale(other)

    def __str__(self):
        return format_tensor(self)

    def __repr__(self):
        return f"TensorPoly2({format_tensor(self)!r})"


class TensorPoly3(_Sparse):
    """Element of the tensor cube; construction and coefficient lookup only."""

    __slots__ = ()

    @staticmethod
    def _sort_key(k):
        return tuple(llex_key(w) for w in k)

    def coefficient(self, u: Word, v: Word, w: Word):
        return self.coeff((tuple(u), tuple(v), tuple(w)))


# helpers on raw dicts

def _add(acc: dict, key, c):
    s = acc.get(key)
    acc[key] = c if s is None else s + c


def _accumulate(acc: dict, terms: Mapping, scale):
    for k, c in terms.items():
        _add(acc, k, scale * c)


def _prune(acc: dict) -> dict:
    return {k: c for k, c in acc.items() if c}


# operations

def poly_add(p: Poly, q: Poly) -> Poly:
    return p + q


def poly_scale(c, p: Poly) -> Poly:
    return p.scale(c)


def conc_words(u: Word, v: Word) -> dict:
    return {u + v: 1}


def conc(p: Poly, q: Poly) -> Poly:
    _check_compatible(p, q)
    acc: dict = {}
    for u, a in p.terms.items():
        for v, b in q.terms.items():
            _add(acc, u + v, a * b)
    return Poly(_prune(acc), p.alphabet, p.ring, _trusted=True)


def pairing(p: Poly, q: Poly):
    _check_compatible(p, q)
    small, big = (p, q) if len(p) <= len(q) else (q, p)
    total = p.ring.zero
    for w, c in small.terms.items():
        d = big.terms.get(w)
        if d is not None:
            total = total + c * d
    return total


def counit(p: Poly):
    return p.coeff(EMPTY)


def tensor_pairing2(t: TensorPoly2, u: Word, v: Word):
    return t.coeff((tuple(u), tuple(v)))


def tensor_mul2(s: TensorPoly2, t: TensorPoly2, left_law, right_law, bound=None) -> TensorPoly2:
    """Componentwise product ``(u(x)v)(u'(x)v') = (u left u')(x)(v right v')``.

    The laws map a pair of words to a dict ``word -> coefficient`` (or a Poly).
    With ``bound``, terms whose left or right leg exceeds it are discarded.
    """
    _check_compatible(s, t)
    alphabet, ring = s.alphabet, s.ring
    wt = alphabet.weight
    acc: dict = {}
    for (u, v), a in s.terms.items():
        for (u2, v2), b in t.terms.items():
            c = a * b
            if bound is not None and (wt(u) + wt(u2) > bound or wt(v) + wt(v2) > bound):
                # laws here are graded: the product of legs has the summed degree
                continue
            left = _as_terms(left_law(u, u2))
            right = _as_terms(right_law(v, v2))
            for x, cx in left.items():
                for y, cy in right.items():
                    _add(acc, (x, y), c * cx * cy)
    return TensorPoly2(_prune({k: ring.coerce(c) for k, c in acc.items()}), alphabet, ring, _trusted=True)


def _as_terms(r):
    return r.terms if isinstance(r, _Sparse) else r


# text formats

def _format_coeff(ring: Ring, c) -> str:
    s = ring.format(c)
    if any(op in s[1:] for op in "+-"):
        return f"({s})"
    return s


def _format_signed(entries, ring):
    if not entries:
        return "0"
    parts = []
    for body, c in entries:
        cs = _format_coeff(ring, c)
        neg = cs.startswith("-")
        if neg:
            cs = cs[1:]
        if body is None:
            term = cs
        elif cs == "1":
            term = body
        else:
            term = f"{cs}*{body}"
        if not parts:
            parts.append(("-" if neg else "") + term)
        else:
            parts.append(("- " if neg else "+ ") + term)
    return " ".join(parts)


def format_poly(p: Poly) -> str:
    """``c1*w1 + c2*w2 + ...`` in llex order; the empty word prints as its coefficient."""
    entries = [(None if not w else p.alphabet.format_word(w), c) for w, c in p.sorted_terms()]
    return _format_signed(entries, p.ring)


def format_tensor(t: TensorPoly2) -> str:
    fw = t.alphabet.format_word
    entries = [(f"[{fw(u)}|{fw(v)}]", c) for (u, v), c in t.sorted_terms()]
    return _format_signed(entries, t.ring)


_COEFF = r"(?:\((?P<paren>[^()]*)\)|(?P<rat>\d+(?:/\d+)?)(?:\s*\*\s*(?P<ratEps>eps))?|(?P<eps>eps))"
_TERM = re.compile(
    rf"\s*(?P<sign>[+-])?\s*(?:{_COEFF}\s*(?:\*\s*(?P<body>\[[^\]]*\]|[A-Za-z_][A-Za-z0-9_.']*))?"
    rf"|(?P<bare>\[[^\]]*\]|[A-Za-z_][A-Za-z0-9_.']*))\s*"
)


def _parse_terms(text: str, ring: Ring, parse_body):
    s = text
    pos = 0
    acc: dict = {}
    first = True
    if s.strip() == "0":
        return acc
    while pos < len(s):
        if s[pos:].strip() == "":
            break
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise PolyParseError(text, pos, "expected a term 'coeff*word'")
        if not first and not m.group("sign"):
            raise PolyParseError(text, pos, "missing '+' or '-' between terms")
        try:
            if m.group("bare") is not None:
                coeff = ring.one
                body = m.group("bare")
            else:
                if m.group("paren") is not None:
                    coeff = ring.parse(m.group("paren"))
                elif m.group("eps"):
                    coeff = ring.parse("eps")
                else:
                    coeff = ring.parse(m.group("rat") + ("*eps" if m.group("ratEps") else ""))
                body = m.group("body")
        except ScalarParseError as e:
            raise PolyParseError(text, pos + e.position, str(e)) from None
        if m.group("sign") == "-":
            coeff = -coeff
        try:
            key = parse_body(body)
        except WordParseError as e:
            raise PolyParseError(text, m.start("body") if m.group("body") else m.start("bare"), str(e)) from None
        _add(acc, key, coeff)
        pos = m.end()
        first = False
    if first:
        raise PolyParseError(text, 0, "empty polynomial")
    return _prune(acc)


def parse_poly(text: str, alphabet: Alphabet, ring: Ring = QQ) -> Poly:
    """Inverse of :func:`format_poly`."""

    def body(b):
        if b is None:
            return EMPTY
        if b.startswith("["):
            raise WordParseError(b, 0, "tensor term in a polynomial")
        return alphabet.parse_word(b)

    return Poly(_parse_terms(text, ring, body), alphabet, ring, _trusted=True)


def parse_tensor(text: str, alphabet: Alphabet, ring: Ring = QQ) -> TensorPoly2:
    """Inverse of :func:`format_tensor` (terms like ``2*[a|b]``)."""

    def body(b):
        if b is None or not b.startswith("["):
            raise WordParseError(str(b), 0, "expected [u|v]")
        left, sep, right = b[1:-1].partition("|")
        if not sep:
            raise WordParseError(b, 0, "expected [u|v]")
        return (alphabet.parse_word(left), alphabet.parse_word(right))

    return TensorPoly2(_parse_terms(text, ring, body), alphabet, ring, _trusted=True)


def poly_to_json(p: Poly) -> dict:
    return {"terms": [{"word": p.alphabet.format_word(w), "coeff": p.ring.format(c)}
                      for w, c in p.sorted_terms()]}


def tensor_to_json(t: TensorPoly2) -> dict:
    fw = t.alphabet.format_word
    return {"terms": [{"left": fw(u), "right": fw(v), "coeff": t.ring.format(c)}
                      for (u, v), c in t.sorted_terms()]}


def words_to_poly(words: Iterable[Word], alphabet: Alphabet, ring: Ring = QQ) -> Poly:
    acc: dict = {}
    for w in words:
        _add(acc, tuple(w), ring.one)
    return Poly(_prune(acc), alphabet, ring, _trusted=True)

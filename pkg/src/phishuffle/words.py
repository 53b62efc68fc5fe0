"""Alphabets, words and the Lyndon-word toolkit.

Words are plain tuples of letter indices into an :class:`Alphabet`; the
declared order of the alphabet's letters is the order on indices.  Symbol
names only appear when parsing or printing.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

Word = tuple  # tuple[int, ...]

EMPTY: Word = ()


class AlphabetMismatchError(ValueError):
    pass


class WordParseError(ValueError):
    def __init__(self, text: str, position: int, reason: str):
        super().__init__(f"cannot parse word {text!r} at position {position}: {reason}")
        self.text = text
        self.position = position


_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
_RANGE = re.compile(r"^([A-Za-z_]+)(\d+)\.\.\1?(\d+)$")


@dataclass(frozen=True)
class Alphabet:
    """Totally ordered alphabet, optionally weight-graded.

    ``names`` lists the letters in increasing order.  Without explicit
    weights every letter has weight 1, so the filtration degree of a word
    is its length.
    """

    names: tuple
    weights: Optional[tuple] = None

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate letter names in {names}")
        for n in names:
            if not _NAME.fullmatch(n) or n == "eps":
                raise ValueError(f"invalid letter name {n!r}")
        if self.weights is not None:
            weights = tuple(int(w) for w in self.weights)
            if len(weights) != len(names):
                raise ValueError("every letter needs a weight")
            if any(w < 1 for w in weights):
                raise ValueError("letter weights must be positive")
            object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(names)})

    @classmethod
    def of(cls, spec: str) -> "Alphabet":
        """Parse ``"a b c"``, ``"y1..y8"`` or ``"y1..y8 weights 1..8"``.

        ``weights index`` uses the numeric suffix of each name as its weight.
        """
        spec = spec.strip()
        weights = None
        if " weights " in f" {spec} ":
            head, _, wspec = spec.partition("weights")
            spec = head.strip()
            wspec = wspec.strip()
        else:
            wspec = None
        names: list[str] = []
        for tok in spec.replace(",", " ").split():
            m = _RANGE.match(tok)
            if m:
                stem, lo, hi = m.group(1), int(m.group(2)), int(m.group(3))
                names.extend(f"{stem}{i}" for i in range(lo, hi + 1))
            else:
                names.append(tok)
        if wspec is not None:
            if wspec == "index":
                weights = [int(re.search(r"(\d+)$", n).group(1)) for n in names]
            else:
                weights = []
                for tok in wspec.replace(",", " ").split():
                    if ".." in tok:
                        lo, hi = tok.split("..")
                        weights.extend(range(int(lo), int(hi) + 1))
                    else:
                        weights.append(int(tok))
        return cls(tuple(names), None if weights is None else tuple(weights))

    @classmethod
    def indexed(cls, stem: str, lo: int, hi: int, weighted: bool = True) -> "Alphabet":
        """``stem{lo} < ... < stem{hi}``, weighted by index when asked."""
        names = tuple(f"{stem}{i}" for i in range(lo, hi + 1))
        weights = tuple(range(lo, hi + 1)) if weighted else None
        return cls(names, weights)

    def __len__(self):
        return len(self.names)

    def __str__(self):
        s = " ".join(self.names)
        if self.weights is not None:
            s += " weights " + " ".join(map(str, self.weights))
        return s

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"letter {name!r} not in alphabet ({' '.join(self.names)})") from None

    def letter(self, name: str) -> Word:
        return (self.index(name),)

    @property
    def letters(self) -> list:
        return [(i,) for i in range(len(self.names))]

    @property
    def single_char(self) -> bool:
        return all(len(n) == 1 for n in self.names)

    def letter_weight(self, i: int) -> int:
        return 1 if self.weights is None else self.weights[i]

    def weight(self, w: Word) -> int:
        if self.weights is None:
            return len(w)
        ws = self.weights
        return sum(ws[i] for i in w)

    def check(self, w: Word) -> Word:
        n = len(self.names)
        for i in w:
            if not 0 <= i < n:
                raise AlphabetMismatchError(f"letter index {i} outside alphabet of size {n}")
        return w

    # text I/O

    def parse_word(self, text: str) -> Word:
        s = text.strip()
        if s == "1" or s == "":
            return EMPTY
        if "." in s:
            parts = s.split(".")
        elif s in self._index:
            parts = [s]
        elif self.single_char:
            parts = list(s)
        else:
            parts = _greedy_split(s, self.names)
            if parts is None:
                raise WordParseError(text, 0, "unknown letters; separate multi-character letters with '.'")
        out = []
        pos = 0
        for p in parts:
            if p not in self._index:
                raise WordParseError(text, text.find(p, pos) if p else pos, f"unknown letter {p!r}")
            out.append(self._index[p])
            pos += len(p)
        return tuple(out)

    def format_word(self, w: Word) -> str:
        if not w:
            return "1"
        if self.single_char:
            return "".join(self.names[i] for i in w)
        return ".".join(self.names[i] for i in w)


def _greedy_split(s: str, names: Sequence[str]) -> Optional[list]:
    # unique longest-match split; None when the text does not decompose
    by_len = sorted(names, key=len, reverse=True)
    out = []
    pos = 0
    while pos < len(s):
        for n in by_len:
            if s.startswith(n, pos):
                out.append(n)
                pos += len(n)
                break
        else:
            return None
    return out


# orders

def llex_key(w: Word):
    return (len(w), w)


def llex_compare(u: Word, v: Word) -> int:
    """-1, 0 or 1 for the length-then-lexicographic order."""
    ku, kv = llex_key(u), llex_key(v)
    return (ku > kv) - (ku < kv)


def lex_compare(u: Word, v: Word) -> int:
    """Plain lexicographic order; a proper prefix precedes."""
    return (u > v) - (u < v)


# Lyndon words

def is_lyndon(w: Word) -> bool:
    if not w:
        return False
    return all(w < w[i:] for i in range(1, len(w)))


def _duval_generate(k: int, n: int) -> Iterator[Word]:
    # Duval's successor algorithm: Lyndon words of length <= n in lex order
    if k == 0 or n == 0:
        return
    w = [0]
    while w:
        yield tuple(w)
        m = len(w)
        while len(w) < n:
            w.append(w[len(w) - m])
        while w and w[-1] == k - 1:
            w.pop()
        if w:
            w[-1] += 1


def lyndon_up_to(alphabet, max_len: int) -> list:
    """All Lyndon words of length at most ``max_len``, llex-sorted."""
    k = alphabet if isinstance(alphabet, int) else len(alphabet)
    return sorted(_duval_generate(k, max_len), key=llex_key)


def lyndon_by_weight(alphabet: Alphabet, max_weight: int) -> list:
    """Lyndon words of weight at most ``max_weight``, llex-sorted."""
    min_w = min(alphabet.letter_weight(i) for i in range(len(alphabet)))
    out = [l for l in _duval_generate(len(alphabet), max_weight // min_w)
           if alphabet.weight(l) <= max_weight]
    return sorted(out, key=llex_key)


def standard_factorization(l: Word) -> tuple:
    """``(s, r)`` with ``r`` the longest proper Lyndon suffix of ``l``."""
    if len(l) < 2 or not is_lyndon(l):
        raise ValueError(f"standard factorization needs a Lyndon word of length >= 2, got {l}")
    for i in range(1, len(l)):
        if is_lyndon(l[i:]):
            return l[:i], l[i:]
    raise AssertionError("unreachable: the last letter is always Lyndon")


def lyndon_factorization(w: Word) -> list:
    """Chen-Fox-Lyndon factorization as ``[(lyndon_word, multiplicity), ...]``.

    Factors are strictly lex-decreasing.  Computed with Duval's algorithm.
    """
    factors: list = []
    n = len(w)
    i = 0
    while i < n:
        j, k = i + 1, i
        while j < n and w[k] <= w[j]:
            k = i if w[k] < w[j] else k + 1
            j += 1
        while i <= k:
            factors.append(w[i:i + j - k])
            i += j - k
    out: list = []
    for f in factors:
        if out and out[-1][0] == f:
            out[-1] = (f, out[-1][1] + 1)
        else:
            out.append((f, 1))
    return out


def subword(w: Word, indices) -> Word:
    """Letters of ``w`` at the given 1-based positions (in increasing order)."""
    idx = sorted(indices)
    for i in idx:
        if not 1 <= i <= len(w):
            raise IndexError(f"position {i} out of range for a word of length {len(w)}")
    return tuple(w[i - 1] for i in idx)


def weight(w: Word, alphabet: Optional[Alphabet] = None) -> int:
    return len(w) if alphabet is None else alphabet.weight(w)


def words_of_length(k: int, n: int) -> Iterator[Word]:
    """All words of length ``n`` over ``k`` letters, lex order."""
    return itertools.product(range(k), repeat=n)


def words_up_to(alphabet: Alphabet, bound: int) -> list:
    """All words of filtration degree <= ``bound`` (weight, or length), llex-sorted."""
    k = len(alphabet)
    if alphabet.weights is None:
        out = [w for n in range(bound + 1) for w in words_of_length(k, n)]
        return out
    out = [EMPTY]
    frontier = [EMPTY]
    while frontier:
        nxt = []
        for w in frontier:
            base = alphabet.weight(w)
            for i in range(k):
                if base + alphabet.weights[i] <= bound:
                    nxt.append(w + (i,))
        out.extend(nxt)
        frontier = nxt
    return sorted(out, key=llex_key)

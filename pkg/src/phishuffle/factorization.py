"""Truncated diagonal series and the Lyndon product factorization.

Everything lives in the completed tensor square with product ``ш ⊗ conc``.
Both legs are graded by length, so truncating every factor at ``bound``
before multiplying gives the same result as truncating the full product.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key

from .bases import dual_s, pbw_p
from .freealg import TensorPoly2, conc_words, tensor_mul2
from .products import shuffle_words
from .report import Report
from .scalars import QQ
from .words import EMPTY, Alphabet, lex_compare, llex_key, lyndon_up_to, words_up_to

ORDERS = ("lex", "llex")


@dataclass(frozen=True)
class TruncatedSeries2:
    series: TensorPoly2
    bound: int

    def __post_init__(self):
        for (u, v) in self.series.terms:
            if len(u) > self.bound or len(v) > self.bound:
                raise ValueError("term beyond the truncation bound")

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries2):
            return NotImplemented
        return self.bound == other.bound and self.series == other.series

    __hash__ = None

    def coefficient(self, u, v):
        return self.series.coeff((tuple(u), tuple(v)))

    def discrepancies(self, other: "TruncatedSeries2") -> list:
        """``(u, v, mine, theirs)`` for every differing coefficient, llex-sorted."""
        keys = set(self.series.terms) | set(other.series.terms)
        out = []
        for k in sorted(keys, key=lambda k: (llex_key(k[0]), llex_key(k[1]))):
            a, b = self.series.coeff(k), other.series.coeff(k)
            if a != b:
                out.append((k[0], k[1], a, b))
        return out


def _one(alphabet: Alphabet) -> TensorPoly2:
    return TensorPoly2({(EMPTY, EMPTY): 1}, alphabet, QQ)


def _mul(s: TensorPoly2, t: TensorPoly2, bound: int) -> TensorPoly2:
    return tensor_mul2(s, t, shuffle_words, conc_words, bound=bound)


def diagonal_series(bound: int, alphabet: Alphabet) -> TruncatedSeries2:
    terms = {(w, w): 1 for w in words_up_to(Alphabet(alphabet.names), bound)}
    return TruncatedSeries2(TensorPoly2(terms, alphabet, QQ), bound)


def sum_form(bound: int, alphabet: Alphabet) -> TruncatedSeries2:
    acc = TensorPoly2.zero(alphabet, QQ)
    for w in words_up_to(Alphabet(alphabet.names), bound):
        acc = acc + TensorPoly2.pure(dual_s(w, alphabet), pbw_p(w, alphabet))
    return TruncatedSeries2(acc, bound)


def truncated_exp(t: TensorPoly2, bound: int) -> TensorPoly2:
    """``Σ t^n / n!`` until the powers leave the window (``t`` without constant term)."""
    if t.coeff((EMPTY, EMPTY)):
        raise ValueError("exponential needs a series without constant term")
    out = _one(t.alphabet)
    power = _one(t.alphabet)
    n = 0
    while True:
        n += 1
        power = _mul(power, t, bound).scale(Fraction(1, n))
        if not power:
            return out
        out = out + power


def lyndon_product_order(alphabet: Alphabet, bound: int, order: str = "lex", decreasing: bool = True) -> list:
    """Lyndon words of length ``<= bound`` in the order the exponentials are multiplied."""
    words = lyndon_up_to(len(alphabet), bound)
    if order == "lex":
        words = sorted(words, key=cmp_to_key(lex_compare))
    elif order == "llex":
        words = sorted(words, key=llex_key)
    else:
        raise ValueError(f"unknown order {order!r}; expected one of {ORDERS}")
    return words[::-1] if decreasing else words


def product_form(bound: int, alphabet: Alphabet, order: str = "lex", decreasing: bool = True) -> TruncatedSeries2:
    """``∏ exp(S_l ⊗ P_l)`` over Lyndon words, left to right in the chosen order.

    The default, lexicographically decreasing, is the order in which Lyndon
    factorizations are nonincreasing; that is what makes the conc leg
    rebuild ``P_w = P_{l₁} ⋯ P_{l_k}``.
    """
    acc = _one(alphabet)
    for l in lyndon_product_order(alphabet, bound, order, decreasing):
        factor = truncated_exp(TensorPoly2.pure(dual_s(l, alphabet), pbw_p(l, alphabet)), bound)
        acc = _mul(acc, factor, bound)
    return TruncatedSeries2(acc, bound)


def verify_factorization(bound: int, alphabet: Alphabet, order: str = "lex") -> Report:
    fw = alphabet.format_word
    rep = Report(f"Lyndon factorization of the diagonal series, bound {bound}, {order} order")
    diag = diagonal_series(bound, alphabet)
    forms = {"sum": sum_form(bound, alphabet), "product": product_form(bound, alphabet, order)}
    for name, form in forms.items():
        bad = diag.discrepancies(form)
        detail = ""
        if bad:
            u, v, a, b = bad[0]
            detail = f"{len(bad)} coefficients differ, first at [{fw(u)}|{fw(v)}]: diagonal {a}, {name} {b}"
        rep.add(f"diagonal = {name} form", not bad, detail)
    return rep


def negative_control(bound: int, alphabet: Alphabet, order: str = "lex") -> tuple:
    """Multiply in increasing order instead.  Returns ``(status, detail)``.

    ``status`` is ``"detected"`` when the result differs from the diagonal
    series, ``"inconclusive"`` when it happens to agree.
    """
    diag = diagonal_series(bound, alphabet)
    wrong = product_form(bound, alphabet, order, decreasing=False)
    bad = diag.discrepancies(wrong)
    if not bad:
        return "inconclusive", "increasing order agrees within the window"
    u, v, a, b = bad[0]
    fw = alphabet.format_word
    return "detected", f"{len(bad)} coefficients differ, first at [{fw(u)}|{fw(v)}]: {a} vs {b}"

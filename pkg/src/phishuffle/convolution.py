"""Convolution calculus on filtration-truncated endomorphisms of the free algebra.

A :class:`GradedEndo` is tabulated eagerly on every word whose filtration
degree (weight, or length for unweighted alphabets) is at most ``bound``.
The convolution ``f ★ g = conc ∘ (f ⊗ g) ∘ Δ`` uses the coproduct the endo
was built for.  Series in ``★`` are summed wordwise; summability is decided
inside the window: the ``★``-powers must vanish on every word of the window
after ``bound + slack`` steps, otherwise :class:`NotSummableWithinBound`
names the first surviving word.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable, Optional

from .freealg import Poly, TensorPoly2, _add, _prune, conc
from .philaw import PhiLaw, _letter_labels, check_grading_compatible
from .products import Coproduct, phi_coproduct, shuffle_coproduct
from .report import Report
from .scalars import QQ
from .words import EMPTY, Alphabet, Word, llex_key, words_up_to

DEFAULT_SLACK = 4


class NotSummableWithinBound(ArithmeticError):
    def __init__(self, witness: Word, alphabet: Alphabet, steps: int, reason: str = ""):
        self.witness = witness
        self.alphabet = alphabet
        self.steps = steps
        name = alphabet.format_word(witness)
        msg = reason or f"star-powers do not vanish on {name} after {steps} steps"
        super().__init__(msg)

    @property
    def witness_text(self) -> str:
        return self.alphabet.format_word(self.witness)


class WindowError(ValueError):
    """A computation needed a word outside the truncation window."""


_WINDOWS: dict = {}


def window(alphabet: Alphabet, bound: int) -> tuple:
    key = (alphabet, bound)
    hit = _WINDOWS.get(key)
    if hit is None:
        hit = tuple(words_up_to(alphabet, bound))
        _WINDOWS[key] = hit
    return hit


class GradedEndo:
    """Linear endomorphism known on the words of degree ``<= bound``."""

    __slots__ = ("bound", "coproduct", "values")

    def __init__(self, bound: int, coproduct: Coproduct, values: dict):
        self.bound = bound
        self.coproduct = coproduct
        self.values = values

    @classmethod
    def tabulate(cls, bound: int, coproduct: Coproduct, fn: Callable[[Word], Poly]) -> "GradedEndo":
        return cls(bound, coproduct, {w: fn(w) for w in window(coproduct.alphabet, bound)})

    @property
    def alphabet(self) -> Alphabet:
        return self.coproduct.alphabet

    @property
    def ring(self):
        return self.coproduct.ring

    def words(self) -> tuple:
        return window(self.alphabet, self.bound)

    def value(self, w: Word) -> Poly:
        try:
            return self.values[w]
        except KeyError:
            raise WindowError(f"word {self.alphabet.format_word(w)} is outside the window "
                              f"(degree {self.alphabet.weight(w)} > {self.bound})") from None

    def __call__(self, x):
        if isinstance(x, Poly):
            return x.map_words(self.value)
        return self.value(tuple(x))

    def _check(self, other: "GradedEndo"):
        if self.bound != other.bound or self.coproduct != other.coproduct:
            raise ValueError("endomorphisms over different windows or coproducts")

    def __eq__(self, other):
        if not isinstance(other, GradedEndo):
            return NotImplemented
        return self.bound == other.bound and self.coproduct == other.coproduct and self.values == other.values

    __hash__ = None

    def __add__(self, other):
        self._check(other)
        return GradedEndo(self.bound, self.coproduct, {w: p + other.values[w] for w, p in self.values.items()})

    def __sub__(self, other):
        self._check(other)
        return GradedEndo(self.bound, self.coproduct, {w: p - other.values[w] for w, p in self.values.items()})

    def scale(self, c) -> "GradedEndo":
        return GradedEndo(self.bound, self.coproduct, {w: p.scale(c) for w, p in self.values.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def compose(self, other: "GradedEndo") -> "GradedEndo":
        """``self ∘ other``; the outputs of ``other`` must stay inside the window."""
        self._check(other)
        return GradedEndo(self.bound, self.coproduct, {w: self(p) for w, p in other.values.items()})

    def is_zero(self) -> bool:
        return not any(self.values.values())

    def first_difference(self, other: "GradedEndo") -> Optional[Word]:
        for w in self.words():
            if self.values[w] != other.values[w]:
                return w
        return None


# basic endomorphisms

def endo_id(bound: int, coproduct: Coproduct) -> GradedEndo:
    a, r = coproduct.alphabet, coproduct.ring
    return GradedEndo.tabulate(bound, coproduct, lambda w: Poly({w: r.one}, a, r, _trusted=True))


def endo_e(bound: int, coproduct: Coproduct) -> GradedEndo:
    a, r = coproduct.alphabet, coproduct.ring
    return GradedEndo.tabulate(bound, coproduct,
                               lambda w: Poly({EMPTY: r.one} if not w else {}, a, r, _trusted=True))


def endo_id_plus(bound: int, coproduct: Coproduct) -> GradedEndo:
    a, r = coproduct.alphabet, coproduct.ring
    return GradedEndo.tabulate(bound, coproduct,
                               lambda w: Poly({w: r.one} if w else {}, a, r, _trusted=True))


def _conv_word(w: Word, f: Callable[[Word], Poly], g: Callable[[Word], Poly], cop: Coproduct) -> Poly:
    acc: dict = {}
    for (u, v), c in cop.word(w).items():
        fu = f(u)
        if not fu:
            continue
        gv = g(v)
        if not gv:
            continue
        for x, a in fu.terms.items():
            for y, b in gv.terms.items():
                _add(acc, x + y, c * a * b)
    return Poly(_prune(acc), cop.alphabet, cop.ring, _trusted=True)


def conv(f: GradedEndo, g: GradedEndo) -> GradedEndo:
    """``(f ★ g)(w) = Σ f(w₁) g(w₂)`` over the terms of ``Δ(w)``."""
    f._check(g)
    cop = f.coproduct
    return GradedEndo(f.bound, cop, {w: _conv_word(w, f.value, g.value, cop) for w in f.words()})


def conv_power(f: GradedEndo, n: int) -> GradedEndo:
    out = endo_e(f.bound, f.coproduct)
    for _ in range(n):
        out = conv(out, f)
    return out


# formal series in one variable

@dataclass(frozen=True)
class FormalSeries1:
    """Power series ``Σ c_n X^n`` with exact rational coefficients.

    ``degree`` is ``None`` for series with infinite support.
    """

    coefficient: Callable[[int], Fraction]
    name: str
    degree: Optional[int] = None

    def __getitem__(self, n: int) -> Fraction:
        if n < 0 or (self.degree is not None and n > self.degree):
            return Fraction(0)
        return Fraction(self.coefficient(n))

    @classmethod
    def polynomial(cls, coeffs, name: str = "poly") -> "FormalSeries1":
        cs = tuple(Fraction(c) for c in coeffs)
        return cls(lambda n: cs[n] if n < len(cs) else Fraction(0), name, len(cs) - 1)

    def truncated(self, n: int) -> "FormalSeries1":
        return FormalSeries1.polynomial([self[k] for k in range(n + 1)], f"{self.name}<={n}")

    def __mul__(self, other: "FormalSeries1") -> "FormalSeries1":
        a, b = self, other
        deg = None if a.degree is None or b.degree is None else a.degree + b.degree
        return FormalSeries1(lambda n: sum((a[k] * b[n - k] for k in range(n + 1)), Fraction(0)),
                             f"({a.name})*({b.name})", deg)

    def compose(self, inner: "FormalSeries1", order: int) -> "FormalSeries1":
        """``self(inner(X))`` up to ``X^order``; ``inner`` must have no constant term."""
        if inner[0] != 0:
            raise ValueError("substitution needs a series without constant term")
        result = [Fraction(0)] * (order + 1)
        power = [Fraction(1)] + [Fraction(0)] * order
        for k in range(order + 1):
            ck = self[k]
            if ck:
                for n in range(order + 1):
                    result[n] += ck * power[n]
            power = [sum((power[i] * inner[n - i] for i in range(n + 1)), Fraction(0)) for n in range(order + 1)]
        return FormalSeries1.polynomial(result, f"{self.name}({inner.name})")


LOG1P = FormalSeries1(lambda n: Fraction((-1) ** (n - 1), n) if n >= 1 else Fraction(0), "log(1+X)")
EXP = FormalSeries1(lambda n: Fraction(1, factorial(n)), "exp(X)")
INV1P = FormalSeries1(lambda n: Fraction((-1) ** n), "1/(1+X)")


class _Powers:
    """Lazy memo of ``f^{★n}(w)``."""

    def __init__(self, f: GradedEndo):
        self.f = f
        self.cop = f.coproduct
        self.memo: dict = {}
        a, r = self.cop.alphabet, self.cop.ring
        self._one = Poly({EMPTY: r.one}, a, r, _trusted=True)
        self._zero = Poly.zero(a, r)

    def __call__(self, n: int, w: Word) -> Poly:
        if n == 0:
            return self._one if not w else self._zero
        key = (n, w)
        hit = self.memo.get(key)
        if hit is None:
            if w not in self.f.values:
                self.f.value(w)  # raises WindowError
            hit = _conv_word(w, lambda u: self(n - 1, u), self.f.value, self.cop)
            self.memo[key] = hit
        return hit


def series_apply(series: FormalSeries1, f: GradedEndo, slack: int = DEFAULT_SLACK) -> GradedEndo:
    """``Σ_n c_n f^{★n}`` evaluated word by word.

    Polynomial series are summed directly.  Otherwise ``f(1)`` must vanish and
    the powers must vanish on the whole window after ``bound + slack`` steps.
    """
    powers = _Powers(f)
    words = f.words()
    if series.degree is not None:
        top = series.degree
    else:
        if f.values[EMPTY]:
            raise NotSummableWithinBound(EMPTY, f.alphabet, 0, "f(1) != 0: the series is not summable")
        top = f.bound + slack
        for w in words:
            if powers(top, w):
                raise NotSummableWithinBound(w, f.alphabet, top)
        top -= 1
    coeffs = [f.ring.coerce(series[n]) for n in range(top + 1)]
    values = {}
    for w in words:
        acc: dict = {}
        for n, c in enumerate(coeffs):
            if not c:
                continue
            p = powers(n, w)
            for x, a in p.terms.items():
                _add(acc, x, c * a)
        values[w] = Poly(_prune(acc), f.alphabet, f.ring, _trusted=True)
    return GradedEndo(f.bound, f.coproduct, values)


def star_log(f: GradedEndo, slack: int = DEFAULT_SLACK) -> GradedEndo:
    """``log★(f)`` for ``f(1) = 1``: ``log(1+X)`` applied to ``f - e``."""
    return series_apply(LOG1P, f - endo_e(f.bound, f.coproduct), slack)


def star_exp(f: GradedEndo, slack: int = DEFAULT_SLACK) -> GradedEndo:
    return series_apply(EXP, f, slack)


def pi1(bound: int, coproduct: Coproduct, slack: int = DEFAULT_SLACK) -> GradedEndo:
    """The primitive projector ``log★(I)``."""
    return series_apply(LOG1P, endo_id_plus(bound, coproduct), slack)


def is_primitive(p: Poly, coproduct: Coproduct) -> bool:
    return not primitivity_residual(p, coproduct)


def primitivity_residual(p: Poly, coproduct: Coproduct) -> TensorPoly2:
    """``Δ(p) - p⊗1 - 1⊗p``."""
    d = coproduct(p)
    one = Poly.one(p.alphabet, p.ring)
    return d - TensorPoly2.pure(p, one) - TensorPoly2.pure(one, p)


def eulerian_projector(n: int, bound: int, coproduct: Coproduct, slack: int = DEFAULT_SLACK,
                       _pi=None) -> GradedEndo:
    """``π₁^{★n} / n!``."""
    p = _pi if _pi is not None else pi1(bound, coproduct, slack)
    return conv_power(p, n).scale(Fraction(1, factorial(n)))


def antipode_series(bound: int, coproduct: Coproduct, slack: int = DEFAULT_SLACK) -> GradedEndo:
    """``Σ_k (-1)^k (I⁺)^{★k}``, the ``★``-inverse of the identity."""
    return series_apply(INV1P, endo_id_plus(bound, coproduct), slack)


def antipode_qft(bound: int, coproduct: Coproduct, slack: int = DEFAULT_SLACK) -> GradedEndo:
    """``S(1) = 1``, ``S(h) = -h - Σ' S(h₁) h₂`` over the reduced coproduct.

    Evaluated as the iteration ``S_{k+1}(h) = -h - Σ' S_k(h₁) h₂`` from
    ``S_0 = e``; on a grading-compatible coproduct the k-th iterate is final
    on every word of degree < k, which is the usual degree recursion.  A word
    whose value still moves after ``bound + slack`` iterations is reported.
    """
    cop = coproduct
    a, r = cop.alphabet, cop.ring
    one = Poly({EMPTY: r.one}, a, r, _trusted=True)
    zero = Poly.zero(a, r)
    memo: dict = {}
    words = window(a, bound)
    inside = set(words)

    def s(k: int, h: Word) -> Poly:
        if not h:
            return one
        if k == 0:
            return zero
        key = (k, h)
        hit = memo.get(key)
        if hit is not None:
            return hit
        acc: dict = {h: -r.one}
        for (u, v), c in cop.reduced_word(h).items():
            if u not in inside:
                raise WindowError(f"coproduct leg {a.format_word(u)} is outside the window")
            for x, cx in s(k - 1, u).terms.items():
                _add(acc, x + v, -c * cx)
        res = Poly(_prune(acc), a, r, _trusted=True)
        memo[key] = res
        return res

    top = bound + slack
    values = {}
    for w in words:
        last = s(top, w)
        if last != s(top - 1, w):
            raise NotSummableWithinBound(w, a, top, f"antipode recursion does not settle on "
                                                    f"{a.format_word(w)} after {top} steps")
        values[w] = last
    return GradedEndo(bound, cop, values)


def rho(f: GradedEndo) -> TensorPoly2:
    """``Σ u ⊗ f(u)`` over the window."""
    acc: dict = {}
    for u, p in f.values.items():
        for x, c in p.terms.items():
            acc[(u, x)] = c
    return TensorPoly2(acc, f.alphabet, f.ring, _trusted=True)


# the phi-deformed enveloping structure

def primitive_letters(phi: PhiLaw, bound: int, slack: int = DEFAULT_SLACK, _pi=None) -> dict:
    """``y'_s = π₁(y_s)`` for every letter of degree ``<= bound``, keyed by letter index."""
    cop = phi_coproduct(phi)
    p = _pi if _pi is not None else pi1(bound, cop, slack)
    a = phi.alphabet
    return {i: p((i,)) for i in range(len(a)) if a.letter_weight(i) <= bound}


def _compositions(total: int, parts: list) -> list:
    """Sequences of labels from ``parts`` summing to ``total``."""
    if total == 0:
        return [()]
    out = []
    for p in parts:
        if p <= total:
            out.extend((p,) + rest for rest in _compositions(total - p, parts))
    return out


def star_log_rearrangement(phi: PhiLaw, s: int, bound: int, slack: int = DEFAULT_SLACK, _pi=None) -> Poly:
    """``Σ_k 1/k! Σ_{s₁+…+s_k = s} π₁(y_{s₁}) … π₁(y_{s_k})`` for the letter labelled ``s``."""
    a, r = phi.alphabet, phi.ring
    labels = _letter_labels(a)
    pos = {lab: i for i, lab in enumerate(labels)}
    prims = primitive_letters(phi, bound, slack, _pi)
    total = Poly.zero(a, r)
    for comp in _compositions(s, sorted(l for l in labels if pos[l] in prims)):
        term = Poly.one(a, r)
        for lab in comp:
            term = conc(term, prims[pos[lab]])
        total = total + term.scale(Fraction(1, factorial(len(comp))))
    return total


def verify_star_log_rearrangement(phi: PhiLaw, s: int, bound: int, slack: int = DEFAULT_SLACK, _pi=None) -> bool:
    a = phi.alphabet
    labels = _letter_labels(a)
    target = Poly({(labels.index(s),): 1}, a, phi.ring)
    return star_log_rearrangement(phi, s, bound, slack, _pi) == target


def phi_morphism(phi: PhiLaw, bound: int, slack: int = DEFAULT_SLACK, _pi=None) -> Callable[[Word], Poly]:
    """The conc-morphism ``Φ`` with ``Φ(y_s) = y'_s``."""
    prims = primitive_letters(phi, bound, slack, _pi)
    a, r = phi.alphabet, phi.ring
    memo: dict = {EMPTY: Poly.one(a, r)}

    def big_phi(w: Word) -> Poly:
        hit = memo.get(w)
        if hit is None:
            hit = conc(big_phi(w[:-1]), prims[w[-1]])
            memo[w] = hit
        return hit

    return big_phi


def phi_isomorphism_check(phi: PhiLaw, bound: int, slack: int = DEFAULT_SLACK, _pi=None) -> Report:
    """``Δ_φ(Φ(w)) = (Φ⊗Φ)(Δ_ш(w))`` on the window, plus ``Φ ∘ π₁ = π₁ ∘ Φ``."""
    a, r = phi.alphabet, phi.ring
    rep = Report(f"Phi intertwines the coproducts ({phi.name}, bound {bound})")
    cop_phi = phi_coproduct(phi)
    cop_sh = shuffle_coproduct(a, r)
    big_phi = phi_morphism(phi, bound, slack, _pi)
    bad = None
    for w in window(a, bound):
        left = cop_phi(big_phi(w))
        right = TensorPoly2(cop_sh.word(w), a, r).map_legs(big_phi, big_phi)
        if left != right:
            bad = (w, left - right)
            break
    rep.add("Δφ∘Φ = (Φ⊗Φ)∘Δш on every word of the window", bad is None,
            "" if bad is None else f"word {a.format_word(bad[0])}", None if bad is None else bad[1])
    pi_phi = _pi if _pi is not None else pi1(bound, cop_phi, slack)
    pi_sh = pi1(bound, cop_sh, slack)
    bad = None
    for w in window(a, bound):
        left = pi_sh(w).map_words(big_phi)
        right = pi_phi(big_phi(w))
        if left != right:
            bad = (w, left - right)
            break
    rep.add("Φ∘π₁(ш) = π₁(φ)∘Φ on the window", bad is None,
            "" if bad is None else f"word {a.format_word(bad[0])}", None if bad is None else bad[1])
    return rep


def check_envelope(phi: PhiLaw, bound: int, slack: int = DEFAULT_SLACK) -> Report:
    """Grading test, projector suite, primitive letters, rearrangement and Φ for one law."""
    rep = Report(f"enveloping structure for {phi.name} (bound {bound})")
    grading = check_grading_compatible(phi)
    rep.add("phi compatible with the weight filtration", grading.ok, grading.detail)
    cop = phi_coproduct(phi)
    try:
        p = pi1(bound, cop, slack)
    except NotSummableWithinBound as e:
        rep.add("I+ is star-nilpotent within the window", False, str(e), e.witness_text)
        rep.notes.append("verdict: not an enveloping bialgebra within the window")
        return rep
    rep.add("I+ is star-nilpotent within the window", True)
    rep.add("π₁∘π₁ = π₁", p.compose(p) == p)
    rep.add("π₁ has primitive image", all(is_primitive(v, cop) for v in p.values.values()))
    prims = primitive_letters(phi, bound, slack, p)
    rep.add("y'_s = π₁(y_s) primitive for every letter", all(is_primitive(v, cop) for v in prims.values()))
    labels = _letter_labels(phi.alphabet)
    ok = all(verify_star_log_rearrangement(phi, labels[i], bound, slack, p) for i in prims)
    rep.add("star-log rearrangement rebuilds every letter", ok)
    rep.claims.extend(phi_isomorphism_check(phi, bound, slack, p).claims)
    rep.notes.append("verdict: " + ("enveloping within the window" if rep.passed else "not verified"))
    return rep

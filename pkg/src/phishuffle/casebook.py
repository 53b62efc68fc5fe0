"""Self-checking counterexamples: torsion in the coefficients, a graded variant,
and the non-nilpotent mod-2 law.

Each case returns a :class:`~phishuffle.report.Report` with one claim per
checked statement and the exact residual on failure.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb

from .convolution import NotSummableWithinBound, _Powers, antipode_series, endo_id_plus, primitivity_residual
from .freealg import Poly, TensorPoly2, conc, format_poly
from .linalg import nullspace, rref
from .philaw import builtin
from .products import Coproduct, delta_q, phi_coproduct, q_coproduct
from .report import Report
from .scalars import DUAL, EPS, QQ, DualNumber
from .words import EMPTY, Alphabet, llex_key, words_up_to


# primitive solver

def _residual_columns(coproduct: Coproduct, bound: int):
    """Words of the window (minus 1) and the reduced residual of each."""
    a = coproduct.alphabet
    words = [w for w in words_up_to(a, bound) if w]
    cols = []
    for w in words:
        res = {k: c for k, c in coproduct.word(w).items() if k[0] and k[1]}
        cols.append(res)
    return words, cols


def _parts(ring, c):
    if ring.is_dual:
        d = c if isinstance(c, DualNumber) else DualNumber(Fraction(c), Fraction(0))
        return d.a0, d.a1
    return Fraction(c), Fraction(0)


def primitive_space(coproduct: Coproduct, bound: int) -> list:
    """A rational basis of the primitives of degree ``<= bound``, in echelon form.

    Over the dual numbers each unknown ``c_w = a_w + b_w ε`` is split in two,
    and ``Δ'(Σ c_w w) = 0`` becomes the block system ``D0 a = 0``,
    ``D1 a + D0 b = 0`` over the rationals.  The empty word is never primitive
    and is left out.
    """
    ring = coproduct.ring
    words, cols = _residual_columns(coproduct, bound)
    n = len(words)
    keys = sorted({k for col in cols for k in col}, key=lambda k: (llex_key(k[0]), llex_key(k[1])))
    if ring.is_dual:
        rows = []
        for k in keys:
            d0 = [_parts(ring, col.get(k, 0))[0] for col in cols]
            d1 = [_parts(ring, col.get(k, 0))[1] for col in cols]
            rows.append(d0 + [Fraction(0)] * n)
            rows.append(d1 + d0)
        basis = nullspace(rows, 2 * n)
        vecs = [[ring.from_parts(v[i], v[n + i]) for i in range(n)] for v in basis]
    else:
        rows = [[Fraction(col.get(k, 0)) for col in cols] for k in keys]
        vecs = nullspace(rows, n)
    polys = [Poly({w: c for w, c in zip(words, v) if c}, coproduct.alphabet, ring) for v in vecs]
    return _echelon(polys, words, ring)


def _flatten(p: Poly, words: list, ring) -> list:
    out = []
    for w in words:
        out.extend(_parts(ring, p.coeff(w)))
    return out


def _echelon(polys: list, words: list, ring) -> list:
    """Reduced echelon form over the rationals, pivots taken on llex-smallest words first."""
    if not polys:
        return []
    red, _ = rref([_flatten(p, words, ring) for p in polys])
    out = []
    for row in red:
        terms = {w: ring.from_parts(row[2 * i], row[2 * i + 1]) if ring.is_dual else row[2 * i]
                 for i, w in enumerate(words)}
        out.append(Poly({w: c for w, c in terms.items() if c}, polys[0].alphabet, ring))
    return out


def _rank(polys: list, words: list, ring) -> int:
    if not polys:
        return 0
    return len(rref([_flatten(p, words, ring) for p in polys])[0])


def primitive_solver(coproduct: Coproduct, bound: int) -> list:
    """Generators of the primitive submodule within the window.

    Over the rationals this is a basis.  Over the dual numbers it is a minimal
    generating set: a rational basis of ``M / εM``, lifted to ``M``.
    """
    space = primitive_space(coproduct, bound)
    ring = coproduct.ring
    if not ring.is_dual:
        return space
    words = [w for w in words_up_to(coproduct.alphabet, bound) if w]
    chosen = [p.scale(EPS) for p in space]
    chosen = [p for p in chosen if p]
    gens = []
    base = _rank(chosen, words, ring)
    for p in space:
        r = _rank(chosen + [p], words, ring)
        if r > base:
            chosen.append(p)
            gens.append(p)
            base = r
    return gens


def same_module(gens_a: list, gens_b: list, coproduct: Coproduct, bound: int) -> bool:
    """Equal rational spans of ``{g, εg}``, i.e. equal submodules."""
    ring = coproduct.ring
    words = [w for w in words_up_to(coproduct.alphabet, bound) if w]

    def closure(gs):
        out = list(gs)
        if ring.is_dual:
            out += [g.scale(EPS) for g in gs]
        return [g for g in out if g]

    a, b = closure(gens_a), closure(gens_b)
    ra, rb = _rank(a, words, ring), _rank(b, words, ring)
    return ra == rb == _rank(a + b, words, ring)


def _fmt_list(polys: list) -> str:
    return "{" + ", ".join(format_poly(p) for p in polys) + "}"


# cases

def infiltration_closed_form(n: int, alphabet: Alphabet) -> TensorPoly2:
    """``Σ C(n,k) x^k⊗x^{n-k} + ε Σ C(n,k) k x^k⊗x^{n-k+1}`` on the one-letter alphabet."""
    acc: dict = {}
    for k in range(n + 1):
        acc[((0,) * k, (0,) * (n - k))] = DualNumber(Fraction(comb(n, k)), Fraction(0))
    for k in range(n + 1):
        key = ((0,) * k, (0,) * (n - k + 1))
        eps_part = DualNumber(Fraction(0), Fraction(comb(n, k) * k))
        acc[key] = acc.get(key, DUAL.zero) + eps_part
    return TensorPoly2(acc, alphabet, DUAL)


def case_dual_number_infiltration(bound: int = 3) -> Report:
    rep = Report("infiltration over the dual numbers, one letter x")
    a = Alphabet.of("x")
    cop = q_coproduct(EPS, a, DUAL)
    x = Poly.word((0,), a, DUAL)
    for n in range(1, 5):
        xn = Poly.word((0,) * n, a, DUAL)
        got, want = cop(xn), infiltration_closed_form(n, a)
        explicit = delta_q(EPS, xn)
        rep.add(f"Δ(x^{n}) matches the binomial closed form", got == want and explicit == want,
                "" if got == want else "multiplicative extension differs", None if got == want else got - want)
    ex = x.scale(EPS)
    res = primitivity_residual(ex, cop)
    rep.add("εx is primitive", not res, "", res or None)
    res_x = primitivity_residual(x, cop)
    rep.add("x is not primitive", bool(res_x), f"residual {res_x}")
    deg1 = primitive_solver(cop, 1)
    rep.add("degree 1: λx primitive forces λ ∈ ℚε", same_module(deg1, [ex], cop, 1),
            f"solver generators {_fmt_list(deg1)}")
    gens = primitive_solver(cop, bound)
    ok = same_module(gens, [ex], cop, bound)
    rep.add(f"primitive solver yields span{{εx}} at bound {bound}", ok,
            f"solver generators {_fmt_list(gens)}", None if ok else gens)
    sq = conc(ex, ex)
    rep.add("(εx)(εx) = 0 in the algebra", not sq, "", sq or None)
    rep.notes.append("εx⊗εx is a nonzero tensor while (εx)^2 vanishes, so the canonical map "
                     "from the enveloping algebra of the primitives is not injective")
    rep.notes.append(f"primitives are determined only up to degree {bound}")
    return rep


def graded_coproduct() -> Coproduct:
    a = Alphabet(("x", "y", "z"), (2, 1, 1))
    return Coproduct(a, DUAL, {0: {((1,), (2,)): EPS}}, "graded dual-number example")


def case_graded_counterexample(bound: int = 2) -> Report:
    rep = Report("graded three-letter counterexample over the dual numbers")
    cop = graded_coproduct()
    a = cop.alphabet
    x, y, z = (Poly.word((i,), a, DUAL) for i in range(3))
    rep.add("Δ respects the grading deg x = 2, deg y = deg z = 1", cop.grading_compatible())
    for name, p in (("y", y), ("z", z)):
        res = primitivity_residual(p, cop)
        rep.add(f"{name} is primitive", not res, "", res or None)
    res = primitivity_residual(x, cop)
    want = TensorPoly2({((1,), (2,)): EPS}, a, DUAL)
    rep.add("Δ(x) - x⊗1 - 1⊗x = ε y⊗z", res == want, f"residual {res}")
    res = primitivity_residual(x.scale(EPS), cop)
    rep.add("εx is primitive", not res, "", res or None)
    gens = primitive_solver(cop, bound)
    expected = [y, z, x.scale(EPS), conc(y, z) - conc(z, y)]
    ok = same_module(gens, expected, cop, bound)
    rep.add(f"primitives of degree <= {bound} are generated by y, z, εx, yz - zy", ok,
            f"solver generators {_fmt_list(gens)}")
    rep.add("every solver generator is primitive", all(not primitivity_residual(g, cop) for g in gens))
    return rep


MOD2_POWERS = 8


def case_mod2_grouplike(bound: int = 3) -> Report:
    rep = Report("the mod-2 law on {y0, y1}")
    phi = builtin("mod2", alphabet=Alphabet.of("y0 y1"))
    cop = phi_coproduct(phi)
    a = phi.alphabet
    g = Poly({EMPTY: 1, (0,): 1, (1,): 1}, a, QQ)
    res = cop(g) - TensorPoly2.pure(g, g)
    rep.add("1 + y0 + y1 is group-like", not res, "", res or None)
    powers = _Powers(endo_id_plus(bound, cop))
    zero_at = [n for n in range(1, MOD2_POWERS + 1) if not powers(n, (0,))]
    rep.add(f"(I+)^★n(y0) != 0 for 1 <= n <= {MOD2_POWERS}", not zero_at,
            f"vanishes at n = {zero_at}" if zero_at else "")
    sq = powers(2, (0,))
    want = Poly({(0, 0): 1, (1, 1): 1}, a, QQ)
    rep.add("(I+)^★2(y0) = y0y0 + y1y1", sq == want, f"got {format_poly(sq)}")
    try:
        antipode_series(bound, cop)
        rep.add("antipode series is not summable", False, "the series was summed")
    except NotSummableWithinBound as e:
        rep.add("antipode series is not summable", e.witness == (0,), f"witness {e.witness_text}")
    return rep


CASES = {
    "dual-infiltration": case_dual_number_infiltration,
    "graded": case_graded_counterexample,
    "mod2": case_mod2_grouplike,
}


def run_cases(which: str = "all") -> list:
    if which == "all":
        return [fn() for fn in CASES.values()]
    if which not in CASES:
        raise KeyError(f"unknown case {which!r}; expected one of {', '.join(CASES)} or all")
    return [CASES[which]()]

import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import reverse_antipode
from phishuffle.bases import pbw_p
from phishuffle.convolution import (EXP, INV1P, LOG1P, FormalSeries1, GradedEndo, NotSummableWithinBound,
                                    WindowError, antipode_qft, antipode_series, conv, conv_power, endo_e,
                                    endo_id, endo_id_plus, eulerian_projector, is_primitive, phi_isomorphism_check,
                                    pi1, primitive_letters, rho, series_apply, star_exp, star_log,
                                    star_log_rearrangement, verify_star_log_rearrangement)
from phishuffle.freealg import Poly, conc, conc_words, parse_poly, tensor_mul2
from phishuffle.philaw import builtin
from phishuffle.products import phi_coproduct, shuffle_coproduct, shuffle_words
from phishuffle.words import Alphabet, lyndon_up_to

A = Alphabet.of("a b")
SH = shuffle_coproduct(A)
Y = Alphabet.of("y1..y5 weights 1..5")


@pytest.fixture(scope="module")
def st5():
    return phi_coproduct(builtin("stuffle", alphabet=Y))


def P(text, alphabet=A):
    return parse_poly(text, alphabet)


def test_basic_endos():
    assert endo_id(3, SH)(P("ab")) == P("ab")
    assert not endo_e(3, SH)((0, 1)) and endo_e(3, SH)(()) == P("1")
    ip = endo_id_plus(3, SH)
    assert not ip(()) and ip((1, 0)) == P("ba")


def test_conv_examples(st5):
    ip = endo_id_plus(3, SH)
    assert conv(ip, ip)((0, 0)) == P("2*aa")
    e, f = endo_e(3, SH), pi1(3, SH)
    assert conv(e, f) == f == conv(f, e)
    ips = endo_id_plus(3, st5)
    assert conv(ips, ips)((1,)) == P("y1.y1", Y)


def random_endo(data, bound, cop):
    words = endo_id(bound, cop).words()
    vals = {}
    for w in words:
        terms = data.draw(st.dictionaries(st.sampled_from(words), st.integers(-3, 3), max_size=2))
        vals[w] = Poly({k: F(v) for k, v in terms.items() if v}, cop.alphabet)
    return GradedEndo(bound, cop, vals)


@settings(max_examples=15, deadline=None)
@given(st.data())
def test_conv_associative_with_unit(data):
    f, g, h = (random_endo(data, 4, SH) for _ in range(3))
    assert conv(conv(f, g), h) == conv(f, conv(g, h))
    e = endo_e(4, SH)
    assert conv(e, f) == f == conv(f, e)


def test_series_examples(st5):
    zero = endo_id(3, SH).scale(0)
    assert series_apply(EXP, zero) == endo_e(3, SH)
    assert series_apply(LOG1P, endo_id_plus(4, SH)) == pi1(4, SH)
    mod2 = phi_coproduct(builtin("mod2"))
    with pytest.raises(NotSummableWithinBound) as e:
        series_apply(LOG1P, endo_id_plus(3, mod2))
    assert e.value.witness == (0,)
    with pytest.raises(NotSummableWithinBound):
        series_apply(EXP, endo_id(3, SH))


def test_pi1_examples(st5):
    p = pi1(4, SH)
    assert p((0, 1)) == P("1/2*ab - 1/2*ba")
    assert not p((0, 0))
    assert pi1(4, st5)((1,)) == P("y2 - 1/2*y1.y1", Y)


def test_is_primitive_examples(st5):
    assert is_primitive(P("a"), SH)
    assert not is_primitive(P("y2", Y), st5)
    assert is_primitive(P("y2 - 1/2*y1.y1", Y), st5)


@pytest.mark.parametrize("which", ["shuffle", "stuffle"])
def test_projector_suite(which, st5):
    cop = SH if which == "shuffle" else st5
    p = pi1(5, cop)
    assert p.compose(p) == p
    p4 = pi1(4, cop)
    assert all(is_primitive(v, cop) for v in p4.values.values())
    total = endo_e(4, cop)
    for n in range(1, 5):
        total = total + eulerian_projector(n, 4, cop, _pi=p4)
    assert total == endo_id(4, cop)


def test_pi1_fixes_lyndon_pbw():
    p = pi1(4, SH)
    for l in lyndon_up_to(A, 4):
        assert p(pbw_p(l, A)) == pbw_p(l, A)


@pytest.mark.parametrize("which", ["shuffle", "stuffle"])
def test_orthogonality_on_powers(which, st5):
    cop, alphabet = (SH, A) if which == "shuffle" else (st5, Y)
    p4 = pi1(4, cop)
    prims = [P("a"), P("ab - ba")] if which == "shuffle" else [P("y1", Y), P("y2 - 1/2*y1.y1", Y)]
    projectors = {n: eulerian_projector(n, 4, cop, _pi=p4) for n in range(5)}
    for q in prims:
        power = Poly.one(alphabet)
        for m in range(1, 5):
            power = conc(power, q)
            if q.degree() * m > 4:
                break
            if m >= 2:
                assert not p4(power)
            for n, proj in projectors.items():
                assert (proj(power) == power) if n == m else not proj(power)


def test_eulerian_example():
    assert eulerian_projector(0, 3, SH) == endo_e(3, SH)
    assert eulerian_projector(2, 3, SH)((0, 1)) == P("1/2*ab + 1/2*ba")


def test_antipode_examples(st5):
    s5 = antipode_series(5, SH)
    for w in s5.words():
        assert s5(w).terms == reverse_antipode(w)
    assert s5((0, 1)) == P("ba")
    assert antipode_series(4, st5)((1,)) == P("-y2 + y1.y1", Y)
    q = antipode_qft(4, st5)
    assert q(()) == P("1", Y) and q((1,)) == P("-y2 + y1.y1", Y)
    assert antipode_qft(3, SH)((0,)) == P("-a")


@pytest.mark.parametrize("which", ["shuffle", "stuffle"])
def test_antipode_inverse(which, st5):
    cop = SH if which == "shuffle" else st5
    s = antipode_series(5, cop)
    i, e = endo_id(5, cop), endo_e(5, cop)
    assert conv(s, i) == e == conv(i, s)
    assert antipode_qft(5, cop) == s


def test_mod2_antipode_not_summable():
    mod2 = phi_coproduct(builtin("mod2"))
    for fn in (antipode_series, antipode_qft):
        with pytest.raises(NotSummableWithinBound) as e:
            fn(4, mod2)
        assert e.value.witness_text == "y0"


def test_primitive_letters():
    phi = builtin("stuffle", alphabet=Y)
    prims = primitive_letters(phi, 3)
    assert prims[0] == P("y1", Y)
    assert prims[1] == P("y2 - 1/2*y1.y1", Y)
    assert prims[2] == P("y3 - 1/2*y1.y2 - 1/2*y2.y1 + 1/3*y1.y1.y1", Y)


def test_star_log_rearrangement():
    phi = builtin("stuffle", alphabet=Y)
    assert verify_star_log_rearrangement(phi, 1, 4)
    prims = primitive_letters(phi, 2)
    assert star_log_rearrangement(phi, 2, 2) == prims[1] + conc(prims[0], prims[0]).scale(F(1, 2))
    assert verify_star_log_rearrangement(phi, 4, 4)


def test_phi_isomorphism():
    assert phi_isomorphism_check(builtin("stuffle", alphabet=Alphabet.of("y1..y4 weights 1..4")), 4).passed
    assert phi_isomorphism_check(builtin("shuffle", alphabet=A), 3).passed


def test_identity_does_not_intertwine(st5):
    # without the primitive letters the two coproducts already differ on y2
    sh = shuffle_coproduct(Y)
    y2 = Poly({(1,): 1}, Y)
    assert st5(y2) != sh(y2)


def test_substitution_laws():
    ip = endo_id_plus(4, SH)
    s = FormalSeries1.polynomial([0, 1, F(-1, 2), 3])
    t = FormalSeries1.polynomial([1, 2, 0, F(1, 5)])
    assert series_apply(t * s, ip) == conv(series_apply(t, ip), series_apply(s, ip))
    assert series_apply(EXP.compose(LOG1P, 6), ip) == endo_id(4, SH)
    assert star_exp(star_log(endo_id(4, SH))) == endo_id(4, SH)
    assert series_apply(INV1P.truncated(6), ip) == antipode_series(4, SH)


def test_rho_multiplicative():
    f, g = pi1(3, SH), antipode_series(3, SH)
    prod = tensor_mul2(rho(f), rho(g), shuffle_words, conc_words, bound=3)
    assert rho(conv(f, g)) == prod
    e = endo_e(3, SH)
    assert rho(e).terms == {((), ()): 1}


def test_window_errors():
    with pytest.raises(WindowError):
        endo_id(2, SH)((0, 0, 0))
    with pytest.raises(ValueError):
        conv(endo_id(2, SH), endo_id(3, SH))

import itertools
from fractions import Fraction as F

import pytest

from bridge import bridge_mismatch
from oracles import delta_q_naive, interleavings, stuffle_by_table
from phishuffle.freealg import Poly, conc, conc_words, pairing, parse_poly, parse_tensor, tensor_mul2
from phishuffle.philaw import builtin, parse_law_text
from phishuffle.products import (delta_conc, delta_phi, delta_q, delta_shuffle, infiltration,
                                 infiltration_words, phi_coproduct, q_coproduct, shuffle, shuffle_words,
                                 stuffle_phi, stuffle_words)
from phishuffle.scalars import DUAL, EPS, QQ
from phishuffle.words import Alphabet

A = Alphabet.of("a b")
X = Alphabet.of("x")


def P(text, alphabet=A, ring=QQ):
    return parse_poly(text, alphabet, ring)


def test_shuffle_examples():
    assert shuffle(P("a"), P("b")) == P("ab + ba")
    assert shuffle(P("aba"), P("1")) == P("aba")
    assert shuffle(P("ab"), P("a")) == P("2*aab + aba")


def test_shuffle_matches_interleavings():
    for total in range(8):
        for m in range(total + 1):
            for u in itertools.product(range(2), repeat=m):
                for v in itertools.product(range(2), repeat=total - m):
                    assert shuffle_words(u, v) == dict(interleavings(u, v))


def test_stuffle_examples(stuffle6, mod2):
    Y = stuffle6.alphabet
    assert stuffle_phi(stuffle6, P("y1", Y), P("y1", Y)) == P("2*y1.y1 + y2", Y)
    assert stuffle_phi(stuffle6, P("y1.y3", Y), P("1", Y)) == P("y1.y3", Y)
    zero = builtin("shuffle", alphabet=Y)
    assert stuffle_phi(zero, P("y1", Y), P("y2", Y)) == P("y1.y2 + y2.y1", Y)
    M = mod2.alphabet
    assert stuffle_phi(mod2, P("y0", M), P("y1", M)) == P("y0.y1 + y1.y0 + y1", M)


def test_stuffle_matches_table_oracle(stuffle6):
    gamma = {k: dict(v) for k, v in stuffle6.gamma.items()}
    for u, v in itertools.product(itertools.product(range(3), repeat=2), repeat=2):
        assert stuffle_words(stuffle6, u, v) == dict(stuffle_by_table(gamma, u, v))


def test_zero_law_is_shuffle():
    Y = Alphabet.of("y1..y3")
    zero = builtin("shuffle", alphabet=Y)
    for u, v in itertools.product(itertools.product(range(3), repeat=2), repeat=2):
        assert stuffle_words(zero, u, v) == shuffle_words(u, v)


def test_infiltration_examples():
    q = F(5)
    assert infiltration(q, P("x", X), P("x", X)) == P("2*xx + 5*x", X)
    assert infiltration(0, P("ab"), P("ba")) == shuffle(P("ab"), P("ba"))
    assert infiltration(3, P("ab"), P("1")) == P("ab")


def test_coproduct_examples(stuffle6, mod2):
    T = lambda s, a=A, r=QQ: parse_tensor(s, a, r)
    assert delta_conc(P("ab")) == T("[ab|1] + [a|b] + [1|ab]")
    assert delta_conc(P("1")) == T("[1|1]")
    assert delta_conc(P("a")) == T("[a|1] + [1|a]")
    assert delta_shuffle(P("ab")) == T("[ab|1] + [a|b] + [b|a] + [1|ab]")
    assert delta_shuffle(P("aa")) == T("[aa|1] + 2*[a|a] + [1|aa]")
    Y, M = stuffle6.alphabet, mod2.alphabet
    assert delta_phi(stuffle6, P("y2", Y)) == T("[y2|1] + [1|y2] + [y1|y1]", Y)
    assert delta_phi(builtin("shuffle", alphabet=A), P("abba")) == delta_shuffle(P("abba"))
    assert delta_phi(mod2, P("y0", M)) == T("[y0|1] + [1|y0] + [y0|y0] + [y1|y1]", M)
    assert delta_q(7, P("x", X)) == T("[x|1] + [1|x] + 7*[x|x]", X)
    got = delta_q(EPS, P("xx", X, DUAL))
    assert got == T("[xx|1] + 2*[x|x] + [1|xx] + 2*eps*[x|xx] + 2*eps*[xx|x]", X, DUAL)
    assert delta_q(0, P("abab")) == delta_shuffle(P("abab"))


def test_delta_q_matches_naive_covers():
    for n in range(5):
        for w in itertools.product(range(2), repeat=n):
            got = delta_q(3, Poly({w: 1}, A))
            assert dict(got.terms) == {k: F(c) for k, c in delta_q_naive(3, w).items()}


def test_q_coproduct_matches_explicit_delta_q():
    cop = q_coproduct(3, A)
    for n in range(5):
        for w in itertools.product(range(2), repeat=n):
            assert cop.word(w) == delta_q(3, Poly({w: 1}, A)).terms


def test_infiltration_bridge():
    q = F(3)
    assert bridge_mismatch(lambda u, v: infiltration_words(q, u, v),
                           lambda w: delta_q(q, Poly({w: 1}, A)).terms, 2, 5, 5) is None


@pytest.mark.parametrize("name", ["shuffle", "stuffle", "mod2"])
def test_phi_bridge_small(name):
    alphabet = Alphabet.of("y0 y1") if name == "mod2" else Alphabet.of("y1 y2 weights 1 2")
    phi = builtin(name, alphabet=alphabet)
    cop = phi_coproduct(phi)
    assert bridge_mismatch(lambda u, v: stuffle_words(phi, u, v), cop.word, 2, 5, 5) is None


def test_bridge_detects_a_wrong_product(stuffle6):
    phi = builtin("stuffle", alphabet=Alphabet.of("y1 y2 weights 1 2"))
    cop = phi_coproduct(phi)
    assert bridge_mismatch(shuffle_words, cop.word, 2, 3, 3) is not None


def test_commutative_law_gives_commutative_product(stuffle6):
    for u, v in itertools.product([w for n in range(4) for w in itertools.product(range(3), repeat=n)], repeat=2):
        if len(u) + len(v) <= 6:
            assert stuffle_words(stuffle6, u, v) == stuffle_words(stuffle6, v, u)


def test_noncommutative_law_gives_noncommutative_product():
    phi = parse_law_text("alphabet: y1 y2 y3\ngamma y1 y2 y3 1\n")
    assert stuffle_words(phi, (0,), (1,)) != stuffle_words(phi, (1,), (0,))


def test_delta_phi_is_conc_morphism(stuffle6, mod2):
    for phi in (stuffle6, mod2):
        cop = phi_coproduct(phi)
        k = min(3, len(phi.alphabet))
        for u in itertools.product(range(k), repeat=2):
            for v in itertools.product(range(k), repeat=2):
                pu, pv = Poly({u: 1}, phi.alphabet), Poly({v: 1}, phi.alphabet)
                lhs = cop(conc(pu, pv))
                rhs = tensor_mul2(cop(pu), cop(pv), conc_words, conc_words)
                assert lhs == rhs


def test_condition_d_failure_blocks_coproduct():
    from phishuffle.philaw import LawError, from_family
    bad = from_family(lambda i, j: {1: 1}, Alphabet.of("y1..y3"), name="collapse")
    with pytest.raises(LawError):
        phi_coproduct(bad)

import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from phishuffle.freealg import (Poly, PolyParseError, TensorPoly2, TensorPoly3, conc, conc_words, counit,
                                format_poly, format_tensor, pairing, parse_poly, parse_tensor, poly_add,
                                poly_scale, poly_to_json, tensor_mul2, tensor_pairing2)
from phishuffle.products import shuffle_words
from phishuffle.scalars import DUAL, QQ
from phishuffle.words import EMPTY, Alphabet, AlphabetMismatchError

A = Alphabet.of("a b")


def P(text, ring=QQ):
    return parse_poly(text, A, ring)


def T(text, ring=QQ):
    return parse_tensor(text, A, ring)


polys = st.dictionaries(st.lists(st.integers(0, 1), max_size=3).map(tuple),
                        st.fractions(max_denominator=5), max_size=4).map(lambda d: Poly(d, A))


def test_module_ops():
    assert poly_add(P("ab + ba"), P("-ba")) == P("ab")
    assert not poly_scale(0, P("ab + 3*b"))
    assert poly_scale(F(1, 2), P("2*ab")) == P("ab")


def test_conc_examples():
    assert conc(P("a"), P("b")) == P("ab")
    assert conc(P("1"), P("3*ab - b")) == P("3*ab - b")
    assert conc(P("a + b"), P("a")) == P("aa + ba")


def test_pairing_and_counit():
    assert pairing(P("ab"), P("ab")) == 1
    assert pairing(P("ab"), P("ba")) == 0
    assert pairing(P("2*ab + ba"), P("ab - ba")) == 1
    assert counit(P("3 + ab")) == 3 and counit(P("ab")) == 0 and counit(P("1")) == 1


def test_gram_matrix_is_identity():
    words = [w for n in range(6) for w in itertools.product(range(2), repeat=n)]
    for u, v in itertools.product(words[:20], words):
        assert pairing(Poly({u: 1}, A), Poly({v: 1}, A)) == (u == v)


@settings(max_examples=60)
@given(polys, polys, polys)
def test_conc_associative_and_counit_multiplicative(p, q, r):
    assert conc(conc(p, q), r) == conc(p, conc(q, r))
    assert counit(conc(p, q)) == counit(p) * counit(q)


def test_tensor_pairing_and_mul():
    assert tensor_pairing2(T("[a|b] + [b|a]"), (0,), (1,)) == 1
    assert tensor_pairing2(T("[a|b]"), (1,), (1,)) == 0
    assert tensor_pairing2(T("[1|1]"), EMPTY, EMPTY) == 1
    aa = T("[a|a]")
    assert tensor_mul2(aa, aa, shuffle_words, conc_words) == T("2*[aa|aa]")
    t = T("[a|b] - 1/2*[ab|1]")
    assert tensor_mul2(T("[1|1]"), t, shuffle_words, conc_words) == t
    assert T("[a|1]") * T("[1|b]") == T("[a|b]")


def test_tensor3_coefficient():
    t = TensorPoly3({((0,), (1,), EMPTY): 2}, A)
    assert t.coefficient((0,), (1,), ()) == 2 and t.coefficient((), (), ()) == 0


def test_zero_pruning_and_mismatch():
    assert P("ab - ab").terms == {}
    with pytest.raises(AlphabetMismatchError):
        conc(P("a"), parse_poly("a", Alphabet.of("a b c")))


@pytest.mark.parametrize("text", ["1 + 2*ab - 1/3*ba", "a", "-b + 5/2*aab", "0"])
def test_text_roundtrip(text):
    assert format_poly(P(text)) == text


@pytest.mark.parametrize("text", ["(1+2*eps)*ab + eps*b", "-eps*a + 1/2", "(2-eps) + a"])
def test_text_roundtrip_dual(text):
    p = P(text, DUAL)
    assert P(format_poly(p), DUAL) == p


def test_tensor_text_roundtrip():
    t = T("[ab|1] + 2*[a|b] - [1|ab]")
    assert parse_tensor(format_tensor(t), A) == t


def test_json():
    assert poly_to_json(P("2*ab - 1/2")) == {"terms": [{"word": "1", "coeff": "-1/2"},
                                                      {"word": "ab", "coeff": "2"}]}


def test_parse_error_positions():
    with pytest.raises(PolyParseError):
        P("2*ab +")
    with pytest.raises(PolyParseError):
        P("2*ac")
    with pytest.raises(PolyParseError):
        P("1/0*a")

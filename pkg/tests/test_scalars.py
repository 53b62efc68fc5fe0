from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from phishuffle.scalars import (DUAL, EPS, QQ, DualNumber, NoInverse, RingMismatchError, ScalarParseError,
                                ring_add, ring_inverse, ring_mul)

rationals = st.fractions(max_denominator=50).filter(lambda x: abs(x.numerator) < 10**6)
duals = st.builds(DualNumber, rationals, rationals)


def test_rational_examples():
    assert ring_add(F(1, 2), F(1, 3)) == F(5, 6)
    assert ring_mul(F(2, 3), F(3, 4)) == F(1, 2)
    assert ring_inverse(F(2, 5)) == F(5, 2)


def test_dual_examples():
    assert ring_add(DualNumber(1, 2), DualNumber(0, 3)) == DualNumber(1, 5)
    assert ring_mul(EPS, EPS) == DUAL.zero
    assert ring_mul(DualNumber(1, 1), DualNumber(1, -1)) == DUAL.one
    assert ring_inverse(DualNumber(0, 3)) is NoInverse
    assert ring_inverse(DualNumber(2, 4)) == DualNumber(F(1, 2), -1)


def test_mixed_rings_rejected():
    with pytest.raises(RingMismatchError):
        ring_add(F(1), EPS)
    with pytest.raises(RingMismatchError):
        QQ.coerce(EPS)


@given(duals, duals, duals)
def test_dual_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a and a + b == b + a
    assert a * (b + c) == a * b + a * c
    assert a * DUAL.one == a and a + DUAL.zero == a
    assert (a * b).a1 == a.a0 * b.a1 + a.a1 * b.a0


@given(rationals, rationals, rationals)
def test_rational_ring_axioms(a, b, c):
    assert ring_mul(a, ring_add(b, c)) == ring_add(ring_mul(a, b), ring_mul(a, c))
    assert ring_add(a, QQ.zero) == a


@given(duals)
def test_inverse_is_inverse(a):
    inv = ring_inverse(a)
    if a.a0 == 0:
        assert inv is NoInverse
    else:
        assert inv * a == DUAL.one


@pytest.mark.parametrize("text,value", [
    ("3/2", DualNumber(F(3, 2), 0)), ("eps", EPS), ("2*eps", DualNumber(0, 2)),
    ("1+2*eps", DualNumber(1, 2)), ("1-eps", DualNumber(1, -1)), ("(-1/3+1/2*eps)", DualNumber(F(-1, 3), F(1, 2))),
])
def test_parse_dual(text, value):
    assert DUAL.parse(text) == value


@given(duals)
def test_format_parse_roundtrip(a):
    assert DUAL.parse(DUAL.format(a)) == a


@given(rationals)
def test_format_parse_roundtrip_rational(a):
    assert QQ.parse(QQ.format(a)) == a


@pytest.mark.parametrize("bad", ["q/0", "1/0", "", "1 2", "eps*eps"])
def test_parse_errors_carry_position(bad):
    with pytest.raises(ScalarParseError) as e:
        DUAL.parse(bad)
    assert e.value.position >= 0


def test_eps_rejected_over_rationals():
    with pytest.raises(ScalarParseError):
        QQ.parse("eps")

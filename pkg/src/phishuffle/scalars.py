"""Exact coefficient rings: the rationals and the dual numbers Q[eps]/(eps^2).

Rationals are plain :class:`fractions.Fraction` values.  Dual numbers are
:class:`DualNumber` pairs of fractions.  A :class:`Ring` object is chosen once
per computation and every polynomial carries it; values from different rings
are never mixed through the ``ring_*`` entry points.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Union


class RingMismatchError(TypeError):
    """Raised when values or objects over different coefficient rings meet."""


class ScalarParseError(ValueError):
    def __init__(self, text: str, position: int, reason: str):
        super().__init__(f"cannot parse scalar {text!r} at position {position}: {reason}")
        self.text = text
        self.position = position


class _NoInverse:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NoInverse"

    def __bool__(self):
        return False


NoInverse = _NoInverse()


@dataclass(frozen=True, slots=True)
class DualNumber:
    """``a0 + a1*eps`` with ``eps**2 == 0``."""

    a0: Fraction
    a1: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a0", Fraction(self.a0))
        object.__setattr__(self, "a1", Fraction(self.a1))

    @staticmethod
    def _lift(other):
        if isinstance(other, DualNumber):
            return other
        if isinstance(other, (int, Fraction)):
            return DualNumber(Fraction(other), Fraction(0))
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return DualNumber(self.a0 + o.a0, self.a1 + o.a1)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return DualNumber(self.a0 - o.a0, self.a1 - o.a1)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return DualNumber(-self.a0, -self.a1)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return DualNumber(self.a0 * o.a0, self.a0 * o.a1 + self.a1 * o.a0)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        inv = dual_inverse(o)
        if inv is NoInverse:
            raise ZeroDivisionError(f"{o} is not invertible in Q[eps]")
        return self * inv

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.a0 == o.a0 and self.a1 == o.a1

    def __hash__(self):
        if self.a1 == 0:
            return hash(self.a0)
        return hash((self.a0, self.a1))

    def __bool__(self):
        return bool(self.a0) or bool(self.a1)

    def __repr__(self):
        return f"DualNumber({self.a0}, {self.a1})"

    def __str__(self):
        return DUAL.format(self)


EPS = DualNumber(0, 1)

Scalar = Union[Fraction, DualNumber]


def dual_inverse(a: DualNumber):
    if a.a0 == 0:
        return NoInverse
    inv0 = 1 / a.a0
    return DualNumber(inv0, -a.a1 * inv0 * inv0)


class RingTag(enum.Enum):
    RATIONALS = "q"
    DUAL_NUMBERS = "dual"


def _fmt_fraction(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


_RAT = r"\d+(?:/\d+)?"
_SCALAR_TERM = re.compile(rf"\s*([+-]?)\s*(?:({_RAT})\s*\*\s*eps|eps|({_RAT}))\s*")


class Ring:
    """A coefficient ring: ``QQ`` or ``DUAL``."""

    def __init__(self, tag: RingTag):
        self.tag = tag
        if tag is RingTag.RATIONALS:
            self.zero = Fraction(0)
            self.one = Fraction(1)
        else:
            self.zero = DualNumber(0, 0)
            self.one = DualNumber(1, 0)

    def __repr__(self):
        return "QQ" if self.tag is RingTag.RATIONALS else "DUAL"

    def __eq__(self, other):
        return isinstance(other, Ring) and other.tag is self.tag

    def __hash__(self):
        return hash(self.tag)

    @property
    def is_dual(self) -> bool:
        return self.tag is RingTag.DUAL_NUMBERS

    def contains(self, x) -> bool:
        if self.is_dual:
            return isinstance(x, DualNumber)
        return isinstance(x, Fraction)

    def coerce(self, x) -> Scalar:
        """Embed an integer, fraction (or, for DUAL, a dual number) into the ring."""
        if isinstance(x, DualNumber):
            if self.is_dual:
                return x
            raise RingMismatchError(f"dual number {x!r} used over the rationals")
        if isinstance(x, bool) or not isinstance(x, (int, Fraction, _RationalABC)):
            raise TypeError(f"not an exact scalar: {x!r}")
        x = Fraction(x)
        return DualNumber(x, 0) if self.is_dual else x

    def from_parts(self, a0, a1=0) -> Scalar:
        if self.is_dual:
            return DualNumber(a0, a1)
        if a1:
            raise RingMismatchError("eps is not available over the rationals")
        return Fraction(a0)

    def parts(self, x) -> tuple[Fraction, Fraction]:
        if isinstance(x, DualNumber):
            return x.a0, x.a1
        return Fraction(x), Fraction(0)

    def inverse(self, x):
        return ring_inverse(x)

    def format(self, x) -> str:
        a0, a1 = self.parts(x)
        if a1 == 0:
            return _fmt_fraction(a0)
        eps_part = "eps" if a1 == 1 else ("-eps" if a1 == -1 else f"{_fmt_fraction(a1)}*eps")
        if a0 == 0:
            return eps_part
        sign = "-" if eps_part.startswith("-") else "+"
        return f"{_fmt_fraction(a0)}{sign}{eps_part.lstrip('-')}"

    def parse(self, text: str) -> Scalar:
        """Parse ``p/q``, ``p``, ``eps``, ``p/q*eps`` or sums such as ``1+2*eps``."""
        s = text.strip()
        if s.startswith("(") and s.endswith(")"):
            s = s[1:-1]
        if not s:
            raise ScalarParseError(text, 0, "empty scalar")
        pos = 0
        a0 = Fraction(0)
        a1 = Fraction(0)
        first = True
        while pos < len(s):
            m = _SCALAR_TERM.match(s, pos)
            if not m or m.end() == pos:
                raise ScalarParseError(text, pos, "expected p, p/q, eps or p/q*eps")
            sign, eps_coeff, plain = m.groups()
            if not first and not sign:
                raise ScalarParseError(text, pos, "missing '+' or '-' between terms")
            try:
                if plain is not None:
                    value = Fraction(plain)
                elif eps_coeff is not None:
                    value = Fraction(eps_coeff)
                else:
                    value = Fraction(1)
            except ZeroDivisionError:
                raise ScalarParseError(text, pos, "zero denominator") from None
            if sign == "-":
                value = -value
            if plain is not None:
                a0 += value
            else:
                a1 += value
            pos = m.end()
            first = False
        if a1 and not self.is_dual:
            raise ScalarParseError(text, s.find("eps"), "eps is only available with --ring dual")
        return self.from_parts(a0, a1)


QQ = Ring(RingTag.RATIONALS)
DUAL = Ring(RingTag.DUAL_NUMBERS)


def ring_of(x) -> Ring:
    if isinstance(x, DualNumber):
        return DUAL
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return QQ
    raise TypeError(f"not an exact scalar: {x!r}")


def _check_same(a, b) -> Ring:
    ra, rb = ring_of(a), ring_of(b)
    if ra != rb:
        raise RingMismatchError(f"cannot combine {a!r} ({ra}) with {b!r} ({rb})")
    return ra


def ring_add(a, b):
    r = _check_same(a, b)
    return r.coerce(a + b)


def ring_mul(a, b):
    r = _check_same(a, b)
    return r.coerce(a * b)


def ring_inverse(a):
    """Multiplicative inverse, or :data:`NoInverse`."""
    if isinstance(a, DualNumber):
        return dual_inverse(a)
    a = Fraction(a)
    if a == 0:
        return NoInverse
    return 1 / a

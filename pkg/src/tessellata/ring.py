"""Exact arithmetic in the quadratic field Q(sqrt 3).

Every coordinate of the hexagon/kite lattice can be written as ``a + b*sqrt(3)``
with rational ``a`` and ``b``, so the geometry never needs a float until it is
drawn.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

SQRT3 = math.sqrt(3.0)


def _frac(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot convert {value!r} exactly to a rational")


class ExactCoord:
    """A number ``a + b*sqrt(3)`` with rational ``a`` and ``b``."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "a", _frac(a))
        object.__setattr__(self, "b", _frac(b))

    def __setattr__(self, name, value):
        raise AttributeError("ExactCoord is immutable")

    @classmethod
    def coerce(cls, value) -> ExactCoord:
        if isinstance(value, ExactCoord):
            return value
        return cls(value, 0)

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        try:
            other = ExactCoord.coerce(other)
        except TypeError:
            return NotImplemented
        return ExactCoord(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = ExactCoord.coerce(other)
        except TypeError:
            return NotImplemented
        return ExactCoord(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        try:
            other = ExactCoord.coerce(other)
        except TypeError:
            return NotImplemented
        return other - self

    def __neg__(self):
        return ExactCoord(-self.a, -self.b)

    def __pos__(self):
        return self

    def __mul__(self, other):
        try:
            other = ExactCoord.coerce(other)
        except TypeError:
            return NotImplemented
        return ExactCoord(
            self.a * other.a + 3 * self.b * other.b,
            self.a * other.b + self.b * other.a,
        )

    __rmul__ = __mul__

    def conjugate(self) -> ExactCoord:
        return ExactCoord(self.a, -self.b)

    def norm(self) -> Fraction:
        """Field norm ``a^2 - 3 b^2``; zero only for zero."""
        return self.a * self.a - 3 * self.b * self.b

    def __truediv__(self, other):
        try:
            other = ExactCoord.coerce(other)
        except TypeError:
            return NotImplemented
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt 3)")
        num = self * other.conjugate()
        return ExactCoord(num.a / n, num.b / n)

    def __rtruediv__(self, other):
        try:
            other = ExactCoord.coerce(other)
        except TypeError:
            return NotImplemented
        return other / self

    # comparison -----------------------------------------------------------

    def sign(self) -> int:
        """Exact sign of ``a + b*sqrt(3)``."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == sb or sb == 0:
            return sa
        if sa == 0:
            return sb
        # opposite signs: compare a^2 against 3 b^2
        d = self.a * self.a - 3 * self.b * self.b
        return sa if d > 0 else sb

    def __eq__(self, other):
        if isinstance(other, ExactCoord):
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Rational)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __float__(self):
        return float(self.a) + float(self.b) * SQRT3

    # display ----------------------------------------------------------------

    def __repr__(self):
        return f"ExactCoord({self.a}, {self.b})"

    def __str__(self):
        """Debug form ``(p + q√3)/d`` over a common denominator."""
        den = math.lcm(self.a.denominator, self.b.denominator)
        p = self.a.numerator * (den // self.a.denominator)
        q = self.b.numerator * (den // self.b.denominator)
        if q == 0:
            body = f"{p}"
        elif p == 0:
            body = _root_term(q)
        else:
            op = "+" if q > 0 else "-"
            body = f"{p} {op} {_root_term(abs(q))}"
        if den == 1:
            return body
        if q == 0 or p == 0:
            return f"{body}/{den}"
        return f"({body})/{den}"


def _root_term(q: int) -> str:
    if q == 1:
        return "√3"
    if q == -1:
        return "-√3"
    return f"{q}√3"


ZERO = ExactCoord(0, 0)
ONE = ExactCoord(1, 0)
ROOT3 = ExactCoord(0, 1)
HALF = Fraction(1, 2)

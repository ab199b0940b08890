"""Exact Gaussian rationals, the coefficient field Q(i).

Real and imaginary parts are ``gmpy2.mpq`` values, which are always kept in
lowest terms with a positive denominator, so equal scalars have identical
representations.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from gmpy2 import mpq

__all__ = ["Scalar", "ZERO", "ONE", "I", "as_scalar", "parse_rational"]

_Q0 = mpq(0)


def _q(x) -> mpq:
    if isinstance(x, mpq):
        return x
    if isinstance(x, int):
        return mpq(x)
    if isinstance(x, Fraction) or isinstance(x, Rational):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"not an exact rational: {x!r}")


def parse_rational(text: str) -> mpq:
    text = text.strip()
    if "/" in text:
        num, den = text.split("/")
        den_v = int(den)
        if den_v == 0:
            raise ZeroDivisionError("zero denominator in rational literal")
        return mpq(int(num), den_v)
    return mpq(int(text))


def _fmt(q: mpq) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class Scalar:
    """An element ``re + im*i`` of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _q(re)
        self.im = _q(im)

    @classmethod
    def _raw(cls, re: mpq, im: mpq) -> "Scalar":
        s = object.__new__(cls)
        s.re = re
        s.im = im
        return s

    def is_real(self) -> bool:
        return self.im == 0

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self) -> bool:
        return not (self.re == 0 and self.im == 0)

    def conjugate(self) -> "Scalar":
        return Scalar._raw(self.re, -self.im)

    def __add__(self, other):
        if not isinstance(other, Scalar):
            other = as_scalar(other)
        return Scalar._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            other = as_scalar(other)
        return Scalar._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return as_scalar(other) - self

    def __neg__(self):
        return Scalar._raw(-self.re, -self.im)

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            other = as_scalar(other)
        a, b, c, d = self.re, self.im, other.re, other.im
        if b == 0 and d == 0:
            return Scalar._raw(a * c, _Q0)
        return Scalar._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        a, b = self.re, self.im
        if b == 0:
            if a == 0:
                raise ZeroDivisionError("inverse of zero scalar")
            return Scalar._raw(1 / a, _Q0)
        den = a * a + b * b
        return Scalar._raw(a / den, -b / den)

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            other = as_scalar(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return as_scalar(other) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.re == other.re and self.im == other.im
        try:
            other = as_scalar(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        if self.im == 0:
            return _fmt(self.re)
        sign = "-" if self.im < 0 else "+"
        return f"({_fmt(self.re)}{sign}{_fmt(abs(self.im))}*I)"


def as_scalar(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, complex):
        raise TypeError("floating-point complex values are not exact")
    return Scalar(x)


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)

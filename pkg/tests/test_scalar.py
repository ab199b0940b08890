from fractions import Fraction

import pytest
from hypothesis import given

from folcoh.scalar import I, ONE, ZERO, Scalar

from conftest import scalars


def test_canonical_form():
    a = Scalar(Fraction(6, -4))
    assert a.re.numerator == -3 and a.re.denominator == 2
    assert Scalar("2/4") == Scalar(Fraction(1, 2))
    assert hash(Scalar("2/4")) == hash(Scalar(Fraction(1, 2)))


def test_i_squared():
    assert I * I == Scalar(-1)
    assert (ONE + I) * (ONE - I) == Scalar(2)


def test_str():
    assert str(Scalar(Fraction(-3, 2))) == "-3/2"
    assert str(Scalar(Fraction(1, 2), -3)) == "(1/2-3*I)"


def test_no_floats():
    with pytest.raises(TypeError):
        Scalar(0.5)
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


@given(scalars(), scalars(), scalars())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if b:
        assert (a / b) * b == a
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()

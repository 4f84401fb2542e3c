"""Exact complex-rational scalar arithmetic."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from weylkit import CRat, I, ONE, ZERO

rationals = st.fractions(
    min_value=-10, max_value=10, max_denominator=12
)
crats = st.builds(CRat, rationals, rationals)


def test_construction_is_exact():
    assert CRat(0.5).re == Fraction(1, 2)
    assert CRat(Fraction(3, 7), -2).im == Fraction(-2)
    assert CRat("2/3").re == Fraction(2, 3)
    assert CRat.coerce(0.25 + 0.5j) == CRat(Fraction(1, 4), Fraction(1, 2))
    with pytest.raises(TypeError):
        CRat([1])


def test_constants_and_predicates():
    assert ZERO.is_zero() and not ZERO
    assert ONE.is_real() and ONE
    assert I.is_imaginary() and I * I == -ONE
    assert CRat(2, 3).conjugate() == CRat(2, -3)


def test_division_and_errors():
    z = CRat(1, 2) / CRat(3, -1)
    assert z * CRat(3, -1) == CRat(1, 2)
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO
    assert 1 / CRat(0, 1) == -I


def test_powers():
    assert I**2 == -ONE
    assert CRat(1, 1) ** 4 == CRat(-4)
    assert CRat(2) ** -2 == CRat(Fraction(1, 4))
    assert CRat(5, -3) ** 0 == ONE


def test_mixed_arithmetic_and_hashing():
    assert 2 + CRat(0, 1) == CRat(2, 1)
    assert Fraction(1, 2) * I == CRat(0, Fraction(1, 2))
    assert 3 - CRat(1) == CRat(2)
    assert hash(CRat(5)) == hash(5)
    assert CRat(Fraction(1, 2)) == Fraction(1, 2)
    assert CRat(0, 1) == 1j


def test_immutability():
    with pytest.raises(AttributeError):
        ONE.re = Fraction(2)


def test_printing():
    assert str(CRat(3)) == "3"
    assert str(CRat(-1, 0)) == "-1"
    assert str(I) == "i"
    assert str(-I) == "-i"
    assert str(CRat(0, Fraction(-1, 2))) == "-(1/2)i"
    assert str(CRat(1, 1)) == "(1 + i)"
    assert str(CRat(Fraction(1, 3), -2)) == "(1/3 - 2i)"


@given(crats, crats, crats)
def test_field_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + ZERO == a and a * ONE == a
    assert a + (-a) == ZERO


@given(crats)
def test_conjugation_and_inverse(a):
    assert a.conjugate().conjugate() == a
    norm = a * a.conjugate()
    assert norm.is_real()
    if a:
        assert a / a == ONE
    z = a.to_complex()
    assert z == complex(float(a.re), float(a.im))

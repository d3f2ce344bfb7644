import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from geobound.quadratic import QuadraticReal, squarefree_split

RADICANDS = [2, 3, 5, 7]
rationals = st.fractions(min_value=-20, max_value=20, max_denominator=30)


@st.composite
def quadratics(draw, d=None):
    return QuadraticReal(draw(rationals), draw(rationals), d or draw(st.sampled_from(RADICANDS)))


def test_squarefree_split():
    assert squarefree_split(12) == (2, 3)
    assert squarefree_split(72) == (6, 2)
    assert squarefree_split(7) == (1, 7)
    with pytest.raises(ValueError):
        squarefree_split(0)


def test_normalisation():
    assert QuadraticReal(0, 1, 12) == QuadraticReal(0, 2, 3)
    assert QuadraticReal(1, 3, 4) == 7
    z = QuadraticReal(5, 0, 3)
    assert (z.p, z.q, z.d) == (5, 0, 1)
    assert hash(QuadraticReal(Fraction(1, 2))) == hash(Fraction(1, 2))


def test_mixing_fields_rejected():
    with pytest.raises(ValueError):
        QuadraticReal.sqrt(2) + QuadraticReal.sqrt(3)


def test_basic_arithmetic():
    r3 = QuadraticReal.sqrt(3)
    assert r3 * r3 == 3
    assert (1 + r3) * (1 - r3) == -2
    assert 1 / (1 + r3) == QuadraticReal(Fraction(-1, 2), Fraction(1, 2), 3)
    assert str(QuadraticReal(Fraction(-1, 2), Fraction(1, 2), 3)) == "-1/2+1/2*sqrt(3)"


def test_sign_close_to_zero():
    # 99/70 is a convergent of sqrt(2): the difference is about 7e-5
    x = QuadraticReal(Fraction(-99, 70), 1, 2)
    assert x.sign() == -1
    assert QuadraticReal(Fraction(-140, 99), 1, 2).sign() == 1


def test_floor_exact():
    assert math.floor(QuadraticReal(0, 1, 2)) == 1
    assert math.floor(QuadraticReal(0, -1, 2)) == -2
    assert math.floor(QuadraticReal(Fraction(1, 2), Fraction(1, 2), 3)) == 1
    assert math.floor(QuadraticReal(Fraction(-99, 70), 1, 2)) == -1


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        QuadraticReal(0) .inverse()


@given(quadratics(d=3), quadratics(d=3), quadratics(d=3))
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    if a:
        assert a * a.inverse() == 1


@given(quadratics(), quadratics())
def test_order_agrees_with_floats(a, b):
    if b.d != a.d and a.q and b.q:
        return
    diff = float(a) - float(b)
    if abs(diff) > 1e-9:
        assert (a < b) == (diff < 0)


@given(quadratics())
def test_floor_brackets(x):
    f = math.floor(x)
    assert f <= x < f + 1

"""Field axioms and serialization of the exact scalar type."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from su3mag.scalars import Scalar, CScalar, parse_scalar

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=12)
scalars = st.builds(Scalar, rationals, rationals, rationals, rationals)


@settings(max_examples=40, deadline=None, derandomize=True)
@given(scalars, scalars, scalars)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c


@settings(max_examples=40, deadline=None, derandomize=True)
@given(scalars)
def test_division(a):
    if a.is_zero():
        with pytest.raises(ZeroDivisionError):
            a.inv()
    else:
        assert a * a.inv() == Scalar(1)
        assert (a / a) == Scalar(1)


@settings(max_examples=40, deadline=None, derandomize=True)
@given(scalars)
def test_float_view_matches_exact_value(a):
    expect = (float(a.a) + float(a.b) * math.sqrt(2)
              + float(a.c) * math.sqrt(3) + float(a.d) * math.sqrt(6))
    assert abs(float(a) - expect) <= 1e-12 * max(1.0, abs(expect))


@settings(max_examples=40, deadline=None, derandomize=True)
@given(scalars)
def test_text_round_trip(a):
    assert parse_scalar(a.text()) == a


def test_text_format_examples():
    assert Scalar(Fraction(3, 4)).text() == "3/4"
    s = Scalar(Fraction(1, 2)) + Scalar.sqrt3(Fraction(-2, 3))
    assert s.text() == "(1/2)+(-2/3)√3"
    assert parse_scalar(s.text()) == s


def test_sqrt_constants_multiply():
    assert Scalar.sqrt2() * Scalar.sqrt2() == Scalar(2)
    assert Scalar.sqrt3() * Scalar.sqrt3() == Scalar(3)
    assert Scalar.sqrt2() * Scalar.sqrt3() == Scalar.sqrt6()
    assert Scalar.sqrt6() * Scalar.sqrt6() == Scalar(6)


def test_complex_scalars():
    i = CScalar.i()
    assert i * i == CScalar(-1)
    z = CScalar(Scalar(1), Scalar(2))
    assert z * z.conj() == CScalar(Scalar(5))
    assert complex(z) == 1 + 2j

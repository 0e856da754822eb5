import pytest
from hypothesis import given
from hypothesis import strategies as st

from localh.polynomial import IntPolynomial

polys = st.lists(st.integers(-20, 20), max_size=6).map(IntPolynomial)


@pytest.mark.parametrize("coeffs,text", [([], "0"), ([1, 3], "1 + 3*x"), ([0, 1], "x"),
                                         ([0, 3], "3*x"), ([1, -1], "1 - x"),
                                         ([0, 1, 1], "x + x^2"), ([-2, 0, 0, 1], "-2 + x^3")])
def test_str(coeffs, text):
    assert str(IntPolynomial(coeffs)) == text


def test_trailing_zeros_are_stripped():
    assert IntPolynomial([1, 0, 0]).coeffs == (1,)
    assert IntPolynomial([0, 0]).is_zero()
    assert IntPolynomial().degree == -1


def test_linear_power():
    assert IntPolynomial.linear_power(-1, 1, 2) == [1, -2, 1]


@given(polys, polys, polys)
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a - a == 0


@given(polys, polys, st.integers(-4, 4))
def test_evaluation_is_a_homomorphism(a, b, x):
    assert (a * b)(x) == a(x) * b(x)
    assert (a + b)(x) == a(x) + b(x)

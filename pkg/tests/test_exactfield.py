from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gqs.exactfield import ONE, SQRT2, ZERO, Scalar, arith, invert, is_zero, parse, render

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=12)
scalars = st.builds(Scalar, rationals, rationals)
nonzero = scalars.filter(lambda x: not x.is_zero())


@given(scalars, scalars, scalars)
def test_ring_axioms(x, y, z):
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + ZERO == x and x * ONE == x
    assert x - x == ZERO


@given(nonzero)
def test_inverse(x):
    assert x * x.invert() == ONE
    assert invert(x) == x.invert()
    assert ONE / x == x.invert()


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        ZERO.invert()


@given(scalars)
def test_norm_is_multiplicative_witness(x):
    # x * conj(x) is rational and equals the norm
    conj = Scalar(x.a, -x.b)
    prod = x * conj
    assert prod.is_rational() and prod.a == x.norm()


def test_sqrt2_squares_to_two():
    assert SQRT2 * SQRT2 == 2
    assert (SQRT2 * SQRT2).is_rational()
    assert Scalar(Fraction(1, 2), 0) * 2 == ONE


def test_mixed_operands():
    assert arith(1, SQRT2, "add") == Scalar(1, 1)
    assert arith(Fraction(1, 3), 3, "mul") == ONE
    assert arith(SQRT2, SQRT2, "sub") == ZERO
    assert is_zero(0) and is_zero(Scalar(0, 0)) and not is_zero(SQRT2)


@given(scalars)
def test_render_parse_roundtrip(x):
    assert parse(render(x)) == x


@pytest.mark.parametrize(
    "value,text",
    [
        (Scalar(0), "0"),
        (Scalar(Fraction(-3, 2)), "-3/2"),
        (SQRT2, "sqrt2"),
        (Scalar(0, -2), "-2*sqrt2"),
        (Scalar(1, -1), "1 - sqrt2"),
    ],
)
def test_render_examples(value, text):
    assert parse(text) == value


def test_hash_consistent_with_equality():
    assert hash(Scalar(2)) == hash(Scalar(Fraction(4, 2), 0))
    assert len({Scalar(1, 1), Scalar(1, 1), Scalar(1, -1)}) == 2

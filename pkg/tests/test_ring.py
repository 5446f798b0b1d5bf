import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tessellata.ring import ONE, ROOT3, ZERO, ExactCoord

small = st.fractions(min_value=-50, max_value=50, max_denominator=40)
coords = st.builds(ExactCoord, small, small)


def approx(x: ExactCoord) -> float:
    return float(x.a) + float(x.b) * math.sqrt(3)


@given(coords, coords)
def test_add_sub_mul_agree_with_floats(x, y):
    assert approx(x + y) == pytest.approx(approx(x) + approx(y), abs=1e-9)
    assert approx(x - y) == pytest.approx(approx(x) - approx(y), abs=1e-9)
    assert approx(x * y) == pytest.approx(approx(x) * approx(y), rel=1e-9, abs=1e-9)


@given(coords, coords)
def test_division_inverts_multiplication(x, y):
    if y == ZERO:
        with pytest.raises(ZeroDivisionError):
            x / y
    else:
        assert (x / y) * y == x


@given(coords)
def test_sign_matches_float(x):
    f = approx(x)
    if abs(f) > 1e-9:
        assert x.sign() == (1 if f > 0 else -1)
    assert (x.sign() == 0) == (x == ZERO)


@given(coords, coords)
def test_ordering_matches_float(x, y):
    if abs(approx(x) - approx(y)) > 1e-9:
        assert (x < y) == (approx(x) < approx(y))


def test_product_formula():
    x = ExactCoord(Fraction(1, 2), 3)
    y = ExactCoord(-2, Fraction(1, 3))
    # (a1 a2 + 3 b1 b2) + (a1 b2 + a2 b1) sqrt3
    assert x * y == ExactCoord(Fraction(-1) + 3, Fraction(1, 6) - 6)


def test_root3_squared_is_three():
    assert ROOT3 * ROOT3 == ExactCoord(3)


def test_zero_only_when_both_parts_zero():
    assert ExactCoord(0, 0) == ZERO
    assert ExactCoord(3, -1) * ExactCoord(3, 1) == ExactCoord(6)
    assert ExactCoord(0, 1) != ZERO


def test_mixes_with_plain_numbers():
    assert ONE + 1 == ExactCoord(2)
    assert 2 * ROOT3 == ExactCoord(0, 2)
    assert ROOT3 - Fraction(1, 2) == ExactCoord(Fraction(-1, 2), 1)


def test_hash_and_equality_are_structural():
    assert hash(ExactCoord(Fraction(2, 4), 1)) == hash(ExactCoord(Fraction(1, 2), 1))
    assert len({ExactCoord(1, 1), ExactCoord(Fraction(2, 2), 1)}) == 1


def test_rejects_floats():
    with pytest.raises((TypeError, ValueError)):
        ExactCoord(0.5, 0)


@pytest.mark.parametrize(
    "value, text",
    [
        (ExactCoord(0, 0), "0"),
        (ExactCoord(0, 8), "8√3"),
        (ExactCoord(0, Fraction(1, 2)), "√3/2"),
        (ExactCoord(Fraction(-3, 2)), "-3/2"),
        (ExactCoord(1, Fraction(1, 2)), "(2 + √3)/2"),
    ],
)
def test_debug_string(value, text):
    assert str(value) == text

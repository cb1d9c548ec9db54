from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pcsf.rational import INF, Rat, format_decimal, format_rat, parse_decimal, to_rat

fractions = st.fractions(max_denominator=10**6)


@given(fractions, fractions)
def test_add_sub_round_trip(a, b):
    x, y = to_rat(a), to_rat(b)
    assert (x + y) - y == x


def test_canonical_form():
    x = Rat(6, -4)
    assert (x.numerator, x.denominator) == (-3, 2)


@pytest.mark.parametrize("text,expected", [("0.5", Rat(1, 2)), ("10", Rat(10)), ("0.000000001", Rat(1, 10**9))])
def test_parse_decimal_exact(text, expected):
    assert parse_decimal(text) == expected


@pytest.mark.parametrize("text", ["-1", "1.0000000001", "1e3", "", ".5", "1."])
def test_parse_decimal_rejects(text):
    with pytest.raises(ValueError):
        parse_decimal(text)


def test_to_rat_rejects_float_and_bool():
    with pytest.raises(TypeError):
        to_rat(0.5)
    with pytest.raises(TypeError):
        to_rat(True)


def test_to_rat_accepts_fraction_and_strings():
    assert to_rat(Fraction(3, 4)) == Rat(3, 4)
    assert to_rat("3/2") == Rat(3, 2)


def test_infinity_dominates():
    assert INF > Rat(10**40)
    assert not INF < Rat(5)
    assert INF == INF


def test_formatting():
    assert format_rat(Rat(3, 2)) == "3/2"
    assert format_rat(Rat(4)) == "4"
    assert format_decimal(Rat(3, 8)) == "0.375"
    with pytest.raises(ValueError):
        format_decimal(Rat(1, 3))

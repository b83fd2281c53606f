from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bernstirl.exact_core import (
    binomial,
    double_factorial,
    factorial,
    falling_factorial,
    format_rational,
    parse_rational,
    rising_factorial,
    sign,
)

rationals = st.fractions(max_denominator=50).filter(lambda x: abs(x) < 100)


def test_factorial_small_values():
    assert [factorial(n) for n in range(7)] == [1, 1, 2, 6, 24, 120, 720]
    assert factorial(20) == 2432902008176640000


def test_factorial_rejects_negative():
    with pytest.raises(ValueError):
        factorial(-1)


@pytest.mark.parametrize(
    "n, expected",
    [(-3, -1), (-1, 1), (0, 1), (1, 1), (2, 2), (5, 15), (6, 48), (7, 105)],
)
def test_double_factorial(n, expected):
    assert double_factorial(n) == expected


@pytest.mark.parametrize("n", [-2, -4, -5])
def test_double_factorial_out_of_domain(n):
    with pytest.raises(ValueError):
        double_factorial(n)


def test_binomial():
    assert binomial(5, 2) == 10
    assert binomial(40, 20) == 137846528820
    assert binomial(3, 5) == 0
    assert binomial(3, -1) == 0
    with pytest.raises(ValueError):
        binomial(-1, 0)


def test_falling_and_rising_factorials():
    assert falling_factorial(5, 3) == 60
    assert rising_factorial(5, 3) == 210
    assert falling_factorial(Fraction(1, 2), 0) == 1
    assert rising_factorial(Fraction(1, 2), 2) == Fraction(3, 4)
    with pytest.raises(ValueError):
        rising_factorial(1, -1)


@given(x=rationals, n=st.integers(0, 12))
@settings(max_examples=100)
def test_rising_is_signed_falling_of_negation(x, n):
    assert rising_factorial(-x, n) == sign(n) * falling_factorial(x, n)
    assert falling_factorial(-x, n) == sign(n) * rising_factorial(x, n)


def test_parse_rational():
    assert parse_rational("-1/2") == Fraction(-1, 2)
    assert parse_rational(" 3 ") == 3
    assert parse_rational("0.25") == Fraction(1, 4)
    for bad in ("abc", "1/0", ""):
        with pytest.raises(ValueError):
            parse_rational(bad)


def test_format_rational_lowest_terms():
    assert format_rational(Fraction(3, 1)) == "3"
    assert format_rational(Fraction(-2, 4)) == "-1/2"
    assert format_rational(Fraction(1, -3)) == "-1/3"
    assert format_rational(0) == "0"


@given(x=rationals)
def test_format_then_parse_is_identity(x):
    assert parse_rational(format_rational(x)) == x

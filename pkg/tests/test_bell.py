from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bernstirl.bell import (
    BELL_FAMILIES,
    bell_partial,
    bell_special,
    faa_di_bruno,
    family_args,
    multiplicities,
    partitions_exact,
)
from bernstirl.exact_core import factorial
from bernstirl.stirling import stirling2

nonzero = st.fractions(min_value=-3, max_value=3, max_denominator=5).filter(bool)


def test_partitions_exact():
    assert list(partitions_exact(4, 2)) == [[3, 1], [2, 2]]
    assert list(partitions_exact(0, 0)) == [[]]
    assert list(partitions_exact(3, 0)) == []
    assert list(partitions_exact(5, 5)) == [[1, 1, 1, 1, 1]]
    # p(10) = 42 split over the number of parts
    assert sum(len(list(partitions_exact(10, k))) for k in range(11)) == 42


def test_multiplicities():
    assert multiplicities([3, 1, 1], 3) == [2, 0, 1]


def test_bell_partial_small():
    x1, x2, x3 = Fraction(2), Fraction(3), Fraction(5)
    # B_{3,2} = 3 x1 x2, B_{3,1} = x3, B_{3,3} = x1^3
    assert bell_partial(3, 2, [x1, x2]) == 3 * x1 * x2
    assert bell_partial(3, 1, [x1, x2, x3]) == x3
    assert bell_partial(3, 3, [x1]) == x1**3
    assert bell_partial(0, 0, []) == 1
    assert bell_partial(4, 0, []) == 0


def test_bell_partial_argument_errors():
    with pytest.raises(ValueError):
        bell_partial(2, 3, [1, 1])
    with pytest.raises(ValueError):
        bell_partial(4, 1, [1, 1])


@pytest.mark.parametrize("family", BELL_FAMILIES)
def test_special_values_match_enumeration(family):
    for n in range(9):
        for k in range(n + 1):
            xs = family_args(family, n - k + 1)
            assert bell_partial(n, k, xs) == bell_special(n, k, family), (n, k)


def test_ones_family_is_second_kind():
    assert bell_special(5, 2, "ones") == stirling2(5, 2) == 15


def test_scaling():
    xs = [Fraction(i, i + 1) for i in range(1, 6)]
    a, b = Fraction(-2, 3), Fraction(5, 2)
    for n in range(1, 6):
        for k in range(1, n + 1):
            scaled = [a * b**i * x for i, x in enumerate(xs, start=1)]
            assert bell_partial(n, k, scaled) == a**k * b**n * bell_partial(n, k, xs)


@given(
    a=nonzero,
    b=nonzero,
    xs=st.lists(
        st.fractions(min_value=-4, max_value=4, max_denominator=7),
        min_size=6,
        max_size=6,
    ),
    n=st.integers(min_value=0, max_value=6),
    data=st.data(),
)
@settings(max_examples=60, deadline=None)
def test_scaling_law(a, b, xs, n, data):
    k = data.draw(st.integers(min_value=0, max_value=n))
    xs = xs[: n - k + 1]
    scaled = [a * b**i * x for i, x in enumerate(xs, start=1)]
    assert bell_partial(n, k, scaled) == a**k * b**n * bell_partial(n, k, xs)


def test_faa_di_bruno_exp_of_exp():
    # d^n/dx^n exp(e^x - 1) at 0 are the Bell numbers
    bell_numbers = [1, 1, 2, 5, 15, 52, 203]
    for n, expected in enumerate(bell_numbers):
        assert faa_di_bruno([1] * (n + 1), [1] * n, n) == expected


def test_faa_di_bruno_log_of_expm1_ratio():
    # ln((e^x - 1)/x): outer ln at 1, inner derivatives 1/(i+1)
    n = 2
    outer = [0] + [(-1) ** (k - 1) * factorial(k - 1) for k in range(1, n + 1)]
    inner = family_args("halves", n)
    # c_2 = B_2/2/2! = 1/24
    assert faa_di_bruno(outer, inner, n) / factorial(n) == Fraction(1, 24)


def test_faa_di_bruno_errors():
    with pytest.raises(ValueError):
        faa_di_bruno([1], [1, 1], 2)
    with pytest.raises(ValueError):
        faa_di_bruno([1, 1, 1], [1], 2)

from fractions import Fraction

import numpy as np
import pytest

from bernstirl.fps import fps_div, series
from bernstirl.hessenberg import (
    DerivativePair,
    HessenbergMatrix,
    derivative_matrix,
    det_elimination,
    det_recursive,
    random_hessenberg,
    ratio_derivative,
)


def test_small_determinants():
    m = HessenbergMatrix.from_dense([[1, 2, 0], [3, 4, 5], [6, 7, 8]])
    # 1*(32-35) - 2*(24-30) = -3 + 12
    assert det_recursive(m) == 9
    assert det_elimination(m) == 9
    empty = HessenbergMatrix(())
    assert det_recursive(empty) == det_elimination(empty) == 1


def test_from_dense_validates_shape():
    with pytest.raises(ValueError):
        HessenbergMatrix.from_dense([[1, 2, 3], [1, 2, 3], [1, 2, 3]])
    with pytest.raises(ValueError):
        HessenbergMatrix.from_dense([[1, 2], [1]])
    with pytest.raises(ValueError):
        HessenbergMatrix(((Fraction(1), Fraction(2), Fraction(3)),))


def test_entry_and_array_agree():
    m = HessenbergMatrix.from_dense([[1, 2, 0], [3, 4, 5], [6, 7, 8]])
    a = m.to_array()
    assert m.entry(1, 3) == 0
    assert m.entry(3, 1) == a[2, 0] == 6


def test_zero_superdiagonal():
    m = HessenbergMatrix.from_dense([[2, 0, 0], [1, 3, 0], [4, 5, 7]])
    assert det_recursive(m) == det_elimination(m) == 42


def test_recursion_matches_elimination_on_random_instances():
    rng = np.random.default_rng(20250315)
    for _ in range(200):
        size = int(rng.integers(1, 13))
        m = random_hessenberg(size, rng)
        assert det_recursive(m) == det_elimination(m)


def test_derivative_pair_needs_nonzero_q0():
    with pytest.raises(ValueError):
        DerivativePair((Fraction(1),), (Fraction(0),))


def test_derivative_matrix_shape():
    dp = DerivativePair(tuple(Fraction(1) for _ in range(4)), (2, 1, 1, 1))
    m = derivative_matrix(dp, 3)
    assert m.size == 4
    # row i = 2: p'', C(2,0) q'', C(2,1) q', C(2,2) q
    assert m.rows[2] == (1, 1, 2, 2)
    with pytest.raises(ValueError):
        derivative_matrix(dp, 4)


def test_ratio_derivative_matches_series_quotient():
    # p = 1/(1 - x) and q = 2 + x + x^2 chosen so every derivative is nonzero
    order = 10
    p = series([1] * (order + 1))
    q = series([2, 1, 1] + [0] * (order - 2))
    quotient = fps_div(p, q).exponential_coeffs()
    dp = DerivativePair(tuple(p.exponential_coeffs()), tuple(q.exponential_coeffs()))
    for k in range(order + 1):
        assert ratio_derivative(dp, k) == quotient[k]

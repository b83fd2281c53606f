from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from bernstirl.exact_core import Rational, binomial, sign

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HessenbergMatrix:
    """Lower-Hessenberg matrix stored by rows.

    rows[i] holds h_{i+1,1}, ..., h_{i+1,min(i+2,k)}; entries right of the
    superdiagonal are structurally zero and not stored.
    """

    rows: tuple[tuple[Rational, ...], ...]

    def __post_init__(self) -> None:
        k = len(self.rows)
        for i, row in enumerate(self.rows):
            if len(row) != min(i + 2, k):
                raise ValueError(f"row {i + 1} must have {min(i + 2, k)} entries")

    @property
    def size(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> Rational:
        """h_{i,j}, 1-based."""
        if j > i + 1:
            return Rational(0)
        return self.rows[i - 1][j - 1]

    def to_array(self) -> np.ndarray:
        k = self.size
        out = np.full((k, k), Rational(0), dtype=object)
        for i, row in enumerate(self.rows):
            out[i, : len(row)] = row
        return out

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence[Rational | int]]) -> HessenbergMatrix:
        """Build from a square matrix; nonzeros above the superdiagonal are rejected."""
        k = len(dense)
        rows = []
        for i, row in enumerate(dense):
            if len(row) != k:
                raise ValueError("matrix must be square")
            if any(row[j] != 0 for j in range(i + 2, k)):
                raise ValueError("matrix must be lower Hessenberg")
            rows.append(tuple(Rational(x) for x in row[: min(i + 2, k)]))
        return cls(tuple(rows))


@dataclass(frozen=True)
class DerivativePair:
    """Derivatives p^(i)(0) and q^(i)(0) of a ratio p/q, i = 0..order."""

    p_derivs: tuple[Rational, ...]
    q_derivs: tuple[Rational, ...]

    def __post_init__(self) -> None:
        if not self.q_derivs or self.q_derivs[0] == 0:
            raise ValueError("q(0) must be nonzero")


def det_elimination(m: HessenbergMatrix) -> Rational:
    """Determinant by fraction-exact Gaussian elimination with row pivoting."""
    k = m.size
    if k == 0:
        return Rational(1)
    a = m.to_array()
    det = Rational(1)
    for col in range(k):
        pivot = next((r for r in range(col, k) if a[r, col] != 0), None)
        if pivot is None:
            return Rational(0)
        if pivot != col:
            a[[col, pivot]] = a[[pivot, col]]
            det = -det
        det *= a[col, col]
        if col + 1 < k:
            factors = a[col + 1 :, col] / a[col, col]
            a[col + 1 :, col:] -= np.outer(factors, a[col, col:])
    return Rational(det)


def det_recursive(m: HessenbergMatrix) -> Rational:
    """Determinant by the lower-Hessenberg linear recursion.

    H_k = sum_{l=1}^{k} (-1)^(k-l) h_{k,l} (prod_{j=l}^{k-1} h_{j,j+1}) H_{l-1},
    with H_0 = 1 and the empty product equal to 1.
    """
    k = m.size
    dets = [Rational(1)]
    for row in range(1, k + 1):
        total = Rational(0)
        # walk l downward so the superdiagonal product grows one factor at a time
        suffix = Rational(1)
        for ell in range(row, 0, -1):
            if ell < row:
                suffix *= m.entry(ell, ell + 1)
                if suffix == 0:
                    break
            total += sign(row - ell) * m.entry(row, ell) * suffix * dets[ell - 1]
        dets.append(total)
    return dets[k]


def derivative_matrix(dp: DerivativePair, k: int) -> HessenbergMatrix:
    """The (k+1)x(k+1) matrix of the ratio-derivative determinant.

    Column 1 holds p^(i)(0); column j >= 2 holds C(i, j-2) q^(i-j+2)(0), zero
    when i-j+2 < 0 (rows indexed i = 0..k).
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if len(dp.p_derivs) < k + 1 or len(dp.q_derivs) < k + 1:
        raise ValueError(f"need derivatives through order {k}")
    size = k + 1
    rows = []
    for i in range(size):
        row = [Rational(dp.p_derivs[i])]
        for j in range(2, min(i + 2, size) + 1):
            row.append(binomial(i, j - 2) * Rational(dp.q_derivs[i - j + 2]))
        rows.append(tuple(row))
    return HessenbergMatrix(tuple(rows))


def ratio_derivative(dp: DerivativePair, k: int) -> Rational:
    """k-th derivative of p/q at 0 as a scaled Hessenberg determinant."""
    det = det_recursive(derivative_matrix(dp, k))
    q0 = Rational(dp.q_derivs[0])
    return sign(k) * det / q0 ** (k + 1)


def random_hessenberg(
    size: int, rng: np.random.Generator, bound: int = 9
) -> HessenbergMatrix:
    """Lower-Hessenberg matrix with entries p/q, |p| <= bound, 1 <= q <= bound."""
    if size < 0:
        raise ValueError("size must be >= 0")
    rows = []
    for i in range(size):
        width = min(i + 2, size)
        nums = rng.integers(-bound, bound + 1, size=width)
        dens = rng.integers(1, bound + 1, size=width)
        pairs = zip(nums, dens, strict=True)
        rows.append(tuple(Rational(int(p), int(q)) for p, q in pairs))
    logger.debug("random Hessenberg matrix of size %d", size)
    return HessenbergMatrix(tuple(rows))

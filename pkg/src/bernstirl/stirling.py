from __future__ import annotations

import logging
import threading

from bernstirl.exact_core import Rational, binomial, factorial, rising_factorial, sign

logger = logging.getLogger(__name__)


class StirlingTables:
    """Memoized triangles of s(n, k) (signed, first kind) and S(n, k).

    Rows are appended by a single writer under a lock and never modified
    afterwards.
    """

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self.s1: list[list[int]] = [[1]]
        self.s2: list[list[int]] = [[1]]

    def _grow(self, n: int) -> None:
        with self._lock:
            if n < len(self.s1):
                return
            logger.debug("extending Stirling tables to row %d", n)
            for m in range(len(self.s1), n + 1):
                prev1, prev2 = self.s1[m - 1], self.s2[m - 1]
                row1 = [0] * (m + 1)
                row2 = [0] * (m + 1)
                for k in range(1, m + 1):
                    # s(m, k) = s(m-1, k-1) - (m-1) s(m-1, k)
                    # S(m, k) = S(m-1, k-1) + k S(m-1, k)
                    up1 = prev1[k] if k < m else 0
                    up2 = prev2[k] if k < m else 0
                    row1[k] = prev1[k - 1] - (m - 1) * up1
                    row2[k] = prev2[k - 1] + k * up2
                self.s1.append(row1)
                self.s2.append(row2)

    def first(self, n: int, k: int) -> int:
        if n < 0:
            raise ValueError("n must be >= 0")
        if k < 0 or k > n:
            return 0
        if n >= len(self.s1):
            self._grow(n)
        return self.s1[n][k]

    def second(self, n: int, k: int) -> int:
        if n < 0:
            raise ValueError("n must be >= 0")
        if k < 0 or k > n:
            return 0
        if n >= len(self.s2):
            self._grow(n)
        return self.s2[n][k]


TABLES = StirlingTables()

# generating-function equations that define each kind
LABELS: dict[str, str] = {
    "stirling1": "Stirl-No-First-GF",
    "stirling2": "2Stirl-funct-rew",
}


def stirling1(n: int, k: int) -> int:
    """Signed Stirling number of the first kind: <z>_n = sum_k s(n, k) z^k."""
    return TABLES.first(n, k)


def stirling2(n: int, k: int) -> int:
    """Number of partitions of an n-set into k nonempty blocks."""
    return TABLES.second(n, k)


def s1_column_term(n: int, k: int) -> Rational:
    """sum_{m=0}^{k} (-1)^m C(k, m) s(n+m, m) / C(n+m, m).

    Up to the factor (-1)^(n-k)/k! this is B_{n,k}(1!/2, 2!/3, ...); it
    recurs in every first-kind expansion.
    """
    total = Rational(0)
    for m in range(k + 1):
        total += Rational(
            sign(m) * binomial(k, m) * stirling1(n + m, m), binomial(n + m, m)
        )
    return total


def s2_column_term(n: int, k: int) -> int:
    """sum_{l=0}^{k} (-1)^l C(n+k, k-l) S(n+l, l), an integer."""
    return sum(
        sign(ell) * binomial(n + k, k - ell) * stirling2(n + ell, ell)
        for ell in range(k + 1)
    )


def diagonal_stirling1(n: int, r: int) -> int:
    """s(n+r, r) rebuilt from the first-kind diagonal identity."""
    if n < 0 or r < 0:
        raise ValueError("n and r must be >= 0")
    total = Rational(0)
    for k in range(n + 1):
        total += rising_factorial(-r, k) / factorial(k) * s1_column_term(n, k)
    value = binomial(n + r, r) * total
    if value.denominator != 1:
        raise ArithmeticError(f"non-integral diagonal value {value} at n={n}, r={r}")
    return value.numerator


def diagonal_stirling2(n: int, r: int) -> int:
    """S(n+r, r) rebuilt from the second-kind diagonal identity."""
    if n < 0 or r < 0:
        raise ValueError("n and r must be >= 0")
    total = Rational(0)
    for k in range(n + 1):
        total += rising_factorial(-r, k) * Rational(
            s2_column_term(n, k), factorial(n + k)
        )
    value = Rational(factorial(n + r), factorial(r)) * total
    if value.denominator != 1:
        raise ArithmeticError(f"non-integral diagonal value {value} at n={n}, r={r}")
    return value.numerator

from __future__ import annotations

import logging
import threading
from fractions import Fraction

from scipy.special import comb

logger = logging.getLogger(__name__)

# Exact scalar used everywhere; Fraction keeps lowest terms after every operation.
Rational = Fraction


class FactorialCache:
    """Growable tables of n! and n!! shared by every module.

    Growth happens under a lock; once an entry exists it never changes, so
    readers can index the lists freely.
    """

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self.factorials: list[int] = [1]
        self.double_factorials: list[int] = [1, 1]

    def factorial(self, n: int) -> int:
        if n < 0:
            raise ValueError("n must be >= 0")
        if n >= len(self.factorials):
            with self._lock:
                table = self.factorials
                if n >= len(table):
                    logger.debug("growing factorial table to %d", n)
                for i in range(len(table), n + 1):
                    table.append(table[-1] * i)
        return self.factorials[n]

    def double_factorial(self, n: int) -> int:
        if n < -3:
            raise ValueError("n must be >= -3")
        if n < 0:
            if n % 2 == 0:
                raise ValueError("negative n must be odd")
            # (-1)!! = 1 and (-3)!! = -1, from n!! = n * (n-2)!! read backwards
            return 1 if n == -1 else -1
        if n >= len(self.double_factorials):
            with self._lock:
                table = self.double_factorials
                for i in range(len(table), n + 1):
                    table.append(table[i - 2] * i)
        return self.double_factorials[n]


_CACHE = FactorialCache()


def factorial(n: int) -> int:
    """n! from the shared cache."""
    return _CACHE.factorial(n)


def double_factorial(n: int) -> int:
    """n!! for n >= -3, with (-1)!! = 1 and (-3)!! = -1."""
    return _CACHE.double_factorial(n)


def binomial(n: int, k: int) -> int:
    """C(n, k) for n >= 0; zero outside 0 <= k <= n."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if k < 0 or k > n:
        return 0
    return int(comb(n, k, exact=True))


def falling_factorial(x: Rational | int, n: int) -> Rational:
    """<x>_n = x(x-1)...(x-n+1), equal to 1 when n = 0."""
    if n < 0:
        raise ValueError("n must be >= 0")
    out = Rational(1)
    x = Rational(x)
    for j in range(n):
        out *= x - j
    return out


def rising_factorial(x: Rational | int, n: int) -> Rational:
    """(x)_n = x(x+1)...(x+n-1), equal to 1 when n = 0."""
    if n < 0:
        raise ValueError("n must be >= 0")
    out = Rational(1)
    x = Rational(x)
    for j in range(n):
        out *= x + j
    return out


def sign(k: int) -> int:
    """(-1)^k."""
    return -1 if k % 2 else 1


def parse_rational(text: str) -> Rational:
    """Parse a rational literal such as "3", "-1/2" or "0.25"."""
    try:
        return Rational(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"invalid rational literal: {text!r}") from exc


def format_rational(x: Rational | int) -> str:
    """Render as "p/q" in lowest terms, or "p" when q = 1."""
    x = Rational(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"

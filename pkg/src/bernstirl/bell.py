from __future__ import annotations

import logging
from collections.abc import Iterator, Sequence
from typing import Literal

from bernstirl.exact_core import Rational, binomial, factorial, sign
from bernstirl.stirling import s1_column_term, stirling1, stirling2

logger = logging.getLogger(__name__)

BellFamily = Literal["halves", "factorial_over_next", "ones", "factorials"]
BELL_FAMILIES: tuple[BellFamily, ...] = (
    "halves",
    "factorial_over_next",
    "ones",
    "factorials",
)


def partitions_exact(n: int, k: int, largest: int | None = None) -> Iterator[list[int]]:
    """Partitions of n into exactly k parts, parts in nonincreasing order.

    >>> list(partitions_exact(4, 2))
    [[3, 1], [2, 2]]
    """
    if largest is None:
        largest = n
    if k == 0:
        if n == 0:
            yield []
        return
    # the first part must leave at least k-1 for the remaining parts
    top = min(largest, n - (k - 1))
    bottom = -(-n // k)  # ceil(n / k): first part is the largest
    for first in range(top, bottom - 1, -1):
        for rest in partitions_exact(n - first, k - 1, first):
            yield [first, *rest]


def multiplicities(parts: Sequence[int], size: int) -> list[int]:
    """ell_i = number of parts equal to i, for i = 1..size."""
    counts = [0] * size
    for p in parts:
        counts[p - 1] += 1
    return counts


def bell_partial(n: int, k: int, xs: Sequence[Rational | int]) -> Rational:
    """Partial Bell polynomial B_{n,k}(x_1, ..., x_{n-k+1}) at explicit values."""
    if n < 0 or k < 0:
        raise ValueError("n and k must be >= 0")
    if k > n:
        raise ValueError("k must be <= n")
    if k == 0:
        return Rational(1 if n == 0 else 0)
    width = n - k + 1
    if len(xs) < width:
        raise ValueError(f"need at least {width} arguments, got {len(xs)}")

    scaled = [Rational(xs[i]) / factorial(i + 1) for i in range(width)]
    n_fact = factorial(n)
    total = Rational(0)
    for parts in partitions_exact(n, k, width):
        ells = multiplicities(parts, width)
        term = Rational(n_fact)
        for i, ell in enumerate(ells):
            if ell:
                term *= scaled[i] ** ell / factorial(ell)
        total += term
    return total


def family_args(family: BellFamily, count: int) -> list[Rational]:
    """The explicit argument list x_1..x_count of a special-value family."""
    if family == "halves":
        return [Rational(1, i + 1) for i in range(1, count + 1)]
    if family == "factorial_over_next":
        return [Rational(factorial(i), i + 1) for i in range(1, count + 1)]
    if family == "ones":
        return [Rational(1)] * count
    if family == "factorials":
        return [Rational(factorial(i - 1)) for i in range(1, count + 1)]
    raise ValueError(f"unknown Bell family: {family!r}")


def bell_special(n: int, k: int, family: BellFamily) -> Rational:
    """Closed-form value of B_{n,k} on one of the special argument families."""
    if n < 0 or k < 0:
        raise ValueError("n and k must be >= 0")
    if k > n:
        raise ValueError("k must be <= n")

    if family == "halves":
        total = sum(
            sign(k - ell) * binomial(n + k, k - ell) * stirling2(n + ell, ell)
            for ell in range(k + 1)
        )
        return Rational(factorial(n) * total, factorial(n + k))
    if family == "factorial_over_next":
        return sign(n - k) * s1_column_term(n, k) / factorial(k)
    if family == "ones":
        return Rational(stirling2(n, k))
    if family == "factorials":
        return Rational(sign(n - k) * stirling1(n, k))
    raise ValueError(f"unknown Bell family: {family!r}")


def faa_di_bruno(
    outer: Sequence[Rational | int], inner: Sequence[Rational | int], n: int
) -> Rational:
    """n-th derivative of f(h(x)) at a point.

    outer[k] = f^(k)(h(x0)) for k = 0..n, inner[i-1] = h^(i)(x0) for i = 1..n.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if len(outer) < n + 1:
        raise ValueError(f"need {n + 1} outer derivatives, got {len(outer)}")
    if len(inner) < n:
        raise ValueError(f"need {n} inner derivatives, got {len(inner)}")
    value = sum(
        (Rational(outer[k]) * bell_partial(n, k, inner) for k in range(n + 1)),
        Rational(0),
    )
    logger.debug("Faa di Bruno at n=%d: %s", n, value)
    return value

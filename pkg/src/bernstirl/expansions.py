"""Closed-form Maclaurin coefficients and their power-series oracles.

Every function here returns ordinary coefficients c_n (of x^n). Formulas that
are naturally stated for x^n/n! are divided by n! before returning.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from functools import cache
from typing import Literal

from bernstirl.bell import bell_partial, family_args
from bernstirl.bernoulli import bernoulli_baseline, eta_neg, zeta_neg
from bernstirl.exact_core import (
    Rational,
    binomial,
    double_factorial,
    factorial,
    rising_factorial,
    sign,
)
from bernstirl.fps import (
    PowerSeries,
    constant,
    fps_log1p,
    fps_mul,
    fps_pow,
    from_rule,
    power_principle,
    series_exp,
    series_expm1_over_x,
    series_log1p_over_x,
)
from bernstirl.stirling import s1_column_term, s2_column_term, stirling1, stirling2

logger = logging.getLogger(__name__)

ExpansionId = Literal[
    "log_exp_plus1_half",
    "log_expm1_over_x",
    "log_cosh",
    "log_sinh_over_x",
    "log_cos",
    "log_sin_over_x",
    "sqrt_log1p_over_x",
    "log1p_over_x_pow_r",
    "sqrt_x_over_expm1",
    "expm1_over_x_pow_r",
]

VARIANTS: dict[str, tuple[str, ...]] = {
    "log_exp_plus1_half": ("eta", "bernoulli", "stirling2"),
    "log_expm1_over_x": ("zeta", "bernoulli", "stirling2", "faa_di_bruno"),
    "log_cosh": ("bernoulli",),
    "log_sinh_over_x": ("bernoulli",),
    "log_cos": ("bernoulli",),
    "log_sin_over_x": ("bernoulli",),
    "sqrt_log1p_over_x": ("stirling1",),
    "log1p_over_x_pow_r": ("stirling1", "mixed", "power_principle"),
    "sqrt_x_over_expm1": ("stirling2", "mixed"),
    "expm1_over_x_pow_r": ("stirling2", "mixed", "power_principle"),
}
"""Formula variants per expansion id; the first one is the default."""

EXPANSION_IDS: tuple[str, ...] = tuple(VARIANTS)
POWER_IDS = frozenset({"log1p_over_x_pow_r", "expm1_over_x_pow_r"})

LABELS: dict[tuple[str, str], str] = {
    ("log_exp_plus1_half", "eta"): "Helms-variant-ser",
    ("log_exp_plus1_half", "bernoulli"): "exp+1-ser-log",
    ("log_exp_plus1_half", "stirling2"): "Helms-2nd-Stirling-Ser",
    ("log_expm1_over_x", "zeta"): "Konwn-exp-results",
    ("log_expm1_over_x", "bernoulli"): "F1(x)-ser-expan",
    ("log_expm1_over_x", "stirling2"): "Bell-exp-results",
    ("log_expm1_over_x", "faa_di_bruno"): "Bruno-Bell-Polynomial",
    ("log_cosh", "bernoulli"): "log-cosh-ser",
    ("log_sinh_over_x", "bernoulli"): "log-sinh-x-ser",
    ("log_cos", "bernoulli"): "log-cosine-series-expansion",
    # quoted without a label inside the proof of this theorem
    ("log_sin_over_x", "bernoulli"): "Konwn-exp-results-thm",
    ("sqrt_log1p_over_x", "stirling1"): "Sqrt-log-Eq",
    ("log1p_over_x_pow_r", "stirling1"): "real-power-log-Eq",
    ("log1p_over_x_pow_r", "mixed"): "log-ser-2stirl-eq",
    ("log1p_over_x_pow_r", "power_principle"): "Z0-alpha-ser-expan",
    ("sqrt_x_over_expm1", "stirling2"): "Bern-Exp-Ser-2nd-Eq",
    ("sqrt_x_over_expm1", "mixed"): "Bern-Exp-Ser-Eq",
    ("expm1_over_x_pow_r", "stirling2"): "Bern-Exp-Ser-Gen-Eq",
    ("expm1_over_x_pow_r", "mixed"): "exp-log-trans-ser",
    ("expm1_over_x_pow_r", "power_principle"): "Z0-alpha-ser-expan",
}
"""Source equation label of each (id, variant) formula."""


def provenance(expansion_id: str, variant: str) -> str:
    """The equation label a coefficient of this formula is tagged with."""
    if (expansion_id, variant) not in LABELS:
        raise ValueError(f"unknown expansion variant: {expansion_id}/{variant}")
    return LABELS[expansion_id, variant]


def _binomial_half(k: int) -> Rational:
    """(-1/2)_k / k! written as -(2k-3)!!/(2k)!!."""
    return -Rational(double_factorial(2 * k - 3), double_factorial(2 * k))


def _even_only(n: int, rule: Callable[[int], Rational]) -> Rational:
    """rule(k) at n = 2k >= 2, zero at n = 0 and odd n."""
    if n == 0 or n % 2:
        return Rational(0)
    return rule(n // 2)


def _bernoulli_term(k: int) -> Rational:
    """B_{2k} / (2k) / (2k)!, the common factor of the even coefficients below."""
    return bernoulli_baseline(2 * k) / (2 * k) / factorial(2 * k)


# ln((e^x + 1)/2)


def _log_exp_plus1_half(variant: str, n: int) -> Rational:
    if variant == "stirling2":
        if n == 0:
            return Rational(0)
        total = sum(
            (
                Rational(sign(j - 1) * factorial(j - 1) * stirling2(n, j), 2**j)
                for j in range(1, n + 1)
            ),
            Rational(0),
        )
        return total / factorial(n)
    if n == 1:
        return Rational(1, 2)
    if variant == "eta":
        return _even_only(n, lambda k: eta_neg(k) / factorial(2 * k))
    return _even_only(n, lambda k: (4**k - 1) * _bernoulli_term(k))


# ln((e^x - 1)/x)


def _log_expm1_over_x(variant: str, n: int) -> Rational:
    if n == 0:
        return Rational(0)
    if variant == "stirling2":
        total = sum(
            (
                Rational(
                    sign(ell) * binomial(2 * n, n + ell) * stirling2(n + ell, ell), ell
                )
                for ell in range(1, n + 1)
            ),
            Rational(0),
        )
        return -total / binomial(2 * n, n) / factorial(n)
    if variant == "faa_di_bruno":
        # outer ln at 1, inner (e^x - 1)/x with h^(i)(0) = 1/(i+1)
        inner = family_args("halves", n)
        total = sum(
            (
                sign(k - 1) * factorial(k - 1) * bell_partial(n, k, inner)
                for k in range(1, n + 1)
            ),
            Rational(0),
        )
        return total / factorial(n)
    if n == 1:
        return Rational(1, 2)
    if variant == "zeta":
        return _even_only(n, lambda k: -zeta_neg(k) / factorial(2 * k))
    return _even_only(n, _bernoulli_term)


# hyperbolic and trigonometric logarithms


def _log_cosh(n: int) -> Rational:
    return _even_only(n, lambda k: (4**k - 1) * 4**k * _bernoulli_term(k))


def _log_sinh_over_x(n: int) -> Rational:
    return _even_only(n, lambda k: 4**k * _bernoulli_term(k))


def _log_cos(n: int) -> Rational:
    return _even_only(n, lambda k: -(4**k) * (4**k - 1) * abs(_bernoulli_term(k)))


def _log_sin_over_x(n: int) -> Rational:
    # 2^{2k-1}|B_{2k}|/k = 4^k |B_{2k}|/(2k)
    return _even_only(n, lambda k: -(4**k) * abs(_bernoulli_term(k)))


# powers of ln(1+x)/x


def _sqrt_log1p_over_x(n: int) -> Rational:
    total = sum(
        (_binomial_half(k) * s1_column_term(n, k) for k in range(n + 1)),
        Rational(0),
    )
    return total / factorial(n)


def _log1p_pow_stirling1(n: int, r: Rational) -> Rational:
    total = sum(
        (
            rising_factorial(-r, k) / factorial(k) * s1_column_term(n, k)
            for k in range(n + 1)
        ),
        Rational(0),
    )
    return total / factorial(n)


def _expm1_pow_ordinary(k: int, r: Rational) -> Rational:
    """Ordinary coefficient of x^k in ((e^x - 1)/x)^r."""
    return sum(
        (
            rising_factorial(-r, m) * Rational(s2_column_term(k, m), factorial(k + m))
            for m in range(k + 1)
        ),
        Rational(0),
    )


def _log1p_pow_mixed(n: int, r: Rational) -> Rational:
    # ln(1+x)/x = y/(e^y - 1) at y = ln(1+x)
    total = sum(
        (
            factorial(k) * stirling1(n, k) * _expm1_pow_ordinary(k, -r)
            for k in range(n + 1)
        ),
        Rational(0),
    )
    return total / factorial(n)


# powers of (e^x - 1)/x


def _sqrt_x_over_expm1_stirling2(n: int) -> Rational:
    total = sum(
        (
            Rational(
                binomial(2 * k, k) * s2_column_term(n, k),
                4**k * binomial(n + k, k),
            )
            for k in range(n + 1)
        ),
        Rational(0),
    )
    return total / factorial(n)


def _sqrt_x_over_expm1_mixed(n: int) -> Rational:
    # (x/(e^x - 1))^(1/2) = (ln(1+y)/y)^(1/2) at y = e^x - 1
    total = sum(
        (factorial(k) * stirling2(n, k) * _sqrt_log1p_over_x(k) for k in range(n + 1)),
        Rational(0),
    )
    return total / factorial(n)


def _expm1_pow_mixed(n: int, r: Rational) -> Rational:
    # (e^x - 1)/x = y/ln(1+y) at y = e^x - 1
    total = sum(
        (
            factorial(ell) * stirling2(n, ell) * _log1p_pow_stirling1(ell, -r)
            for ell in range(n + 1)
        ),
        Rational(0),
    )
    return total / factorial(n)


@cache
def _integer_powers(base: str, order: int) -> tuple[tuple[Rational, ...], ...]:
    """Exponential coefficients of base^q, q = 0..order, through x^order."""
    f = series_log1p_over_x(order) if base == "log1p" else series_expm1_over_x(order)
    powers = []
    current = constant(1, order)
    for _ in range(order + 1):
        powers.append(tuple(current.exponential_coeffs()))
        current = fps_mul(current, f)
    return tuple(powers)


def _power_principle(base: str, n: int, r: Rational) -> Rational:
    return power_principle(_integer_powers(base, n), r, n) / factorial(n)


# dispatch


def _check_args(expansion_id: str, variant: str, n: int, r: Rational | None) -> None:
    if expansion_id not in VARIANTS:
        raise ValueError(f"unknown expansion id: {expansion_id!r}")
    if variant not in VARIANTS[expansion_id]:
        raise ValueError(f"unknown variant {variant!r} for {expansion_id}")
    if n < 0:
        raise ValueError("n must be >= 0")
    if expansion_id in POWER_IDS and r is None:
        raise ValueError(f"{expansion_id} requires r")
    if expansion_id not in POWER_IDS and r is not None:
        raise ValueError(f"{expansion_id} does not take r")


def coeff(
    expansion_id: str,
    variant: str | None,
    n: int,
    r: Rational | int | None = None,
) -> Rational:
    """c_n of the expansion by the named closed-form variant.

    `variant=None` selects the first variant of the id. `r` must be given for
    the `_pow_r` ids and only for them.
    """
    if variant is None and expansion_id in VARIANTS:
        variant = VARIANTS[expansion_id][0]
    _check_args(expansion_id, variant, n, r)
    r = None if r is None else Rational(r)

    if expansion_id == "log_exp_plus1_half":
        return _log_exp_plus1_half(variant, n)
    if expansion_id == "log_expm1_over_x":
        return _log_expm1_over_x(variant, n)
    if expansion_id == "log_cosh":
        return _log_cosh(n)
    if expansion_id == "log_sinh_over_x":
        return _log_sinh_over_x(n)
    if expansion_id == "log_cos":
        return _log_cos(n)
    if expansion_id == "log_sin_over_x":
        return _log_sin_over_x(n)
    if expansion_id == "sqrt_log1p_over_x":
        return _sqrt_log1p_over_x(n)
    if expansion_id == "sqrt_x_over_expm1":
        if variant == "stirling2":
            return _sqrt_x_over_expm1_stirling2(n)
        return _sqrt_x_over_expm1_mixed(n)
    if expansion_id == "log1p_over_x_pow_r":
        if variant == "stirling1":
            return _log1p_pow_stirling1(n, r)
        if variant == "mixed":
            return _log1p_pow_mixed(n, r)
        return _power_principle("log1p", n, r)
    # expm1_over_x_pow_r
    if variant == "stirling2":
        return _expm1_pow_ordinary(n, r)
    if variant == "mixed":
        return _expm1_pow_mixed(n, r)
    return _power_principle("expm1", n, r)


# oracle


def _shifted(f: PowerSeries) -> PowerSeries:
    return f - constant(1, f.order)


@cache
def oracle_series(expansion_id: str, r: Rational | None, order: int) -> PowerSeries:
    """The target function built from power-series operations alone."""
    logger.debug("building oracle series %s r=%s to order %d", expansion_id, r, order)
    if expansion_id == "log_exp_plus1_half":
        # (e^x + 1)/2 - 1 = (e^x - 1)/2
        return fps_log1p(_shifted(series_exp(order)).scale(Rational(1, 2)))
    if expansion_id == "log_expm1_over_x":
        return fps_log1p(_shifted(series_expm1_over_x(order)))
    if expansion_id == "log_cosh":
        cosh = from_rule(
            order, lambda n: Rational(1, factorial(n)) if n % 2 == 0 else 0
        )
        return fps_log1p(_shifted(cosh))
    if expansion_id == "log_sinh_over_x":
        sinhc = from_rule(
            order, lambda n: Rational(1, factorial(n + 1)) if n % 2 == 0 else 0
        )
        return fps_log1p(_shifted(sinhc))
    if expansion_id == "log_cos":
        cos = from_rule(
            order, lambda n: Rational(sign(n // 2), factorial(n)) if n % 2 == 0 else 0
        )
        return fps_log1p(_shifted(cos))
    if expansion_id == "log_sin_over_x":
        sinc = from_rule(
            order,
            lambda n: Rational(sign(n // 2), factorial(n + 1)) if n % 2 == 0 else 0,
        )
        return fps_log1p(_shifted(sinc))
    if expansion_id == "sqrt_log1p_over_x":
        return fps_pow(series_log1p_over_x(order), Rational(1, 2))
    if expansion_id == "log1p_over_x_pow_r":
        return fps_pow(series_log1p_over_x(order), r)
    if expansion_id == "sqrt_x_over_expm1":
        return fps_pow(series_expm1_over_x(order), Rational(-1, 2))
    if expansion_id == "expm1_over_x_pow_r":
        return fps_pow(series_expm1_over_x(order), r)
    raise ValueError(f"unknown expansion id: {expansion_id!r}")


def oracle_coeff(
    expansion_id: str,
    n: int,
    r: Rational | int | None = None,
    order: int | None = None,
) -> Rational:
    """c_n of the oracle series truncated at `order` (default n)."""
    if expansion_id not in VARIANTS:
        raise ValueError(f"unknown expansion id: {expansion_id!r}")
    if n < 0:
        raise ValueError("n must be >= 0")
    if order is None:
        order = n
    if n > order:
        raise ValueError("n must be <= order")
    if (expansion_id in POWER_IDS) != (r is not None):
        raise ValueError(f"r must be given exactly for {sorted(POWER_IDS)}")
    r = None if r is None else Rational(r)
    return oracle_series(expansion_id, r, order)[n]

from __future__ import annotations

import logging
import threading
from collections.abc import Callable
from dataclasses import dataclass
from functools import cache
from typing import Literal

from bernstirl.exact_core import (
    Rational,
    binomial,
    factorial,
    rising_factorial,
    sign,
)
from bernstirl.fps import constant, fps_div, series_log1p_over_x
from bernstirl.hessenberg import (
    DerivativePair,
    HessenbergMatrix,
    derivative_matrix,
    ratio_derivative,
)
from bernstirl.stirling import s2_column_term, stirling1, stirling2

logger = logging.getLogger(__name__)

DetVariant = Literal["tanh", "tan", "logistic", "integral"]
RecVariant = Literal["tanh", "logistic", "integral"]
ClosedVariant = Literal["eta", "zeta_bell", "s2"]
SecondKindRoute = Literal["fps_baseline", "stirling_sum", "alt_sum", "integral"]

DET_VARIANTS: tuple[DetVariant, ...] = ("tanh", "tan", "logistic", "integral")
REC_VARIANTS: tuple[RecVariant, ...] = ("tanh", "logistic", "integral")
CLOSED_VARIANTS: tuple[ClosedVariant, ...] = ("eta", "zeta_bell", "s2")
SECOND_KIND_ROUTES: tuple[SecondKindRoute, ...] = (
    "fps_baseline",
    "stirling_sum",
    "alt_sum",
    "integral",
)


def _require_positive(k: int) -> None:
    if k < 1:
        raise ValueError("k must be >= 1")


# baseline

_baseline: list[Rational] = [Rational(1)]
_baseline_lock = threading.Lock()


def bernoulli_baseline(n: int) -> Rational:
    """B_n from sum_{j=0}^{n} C(n+1, j) B_j = [n = 0]; B_1 = -1/2."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n >= len(_baseline):
        with _baseline_lock:
            for m in range(len(_baseline), n + 1):
                acc = sum(
                    (binomial(m + 1, j) * _baseline[j] for j in range(m)),
                    Rational(0),
                )
                _baseline.append(-acc / (m + 1))
    return _baseline[n]


# determinantal routes


def _tanh_pair(order: int) -> DerivativePair:
    # sinh / cosh
    return DerivativePair(
        tuple(Rational(i % 2) for i in range(order + 1)),
        tuple(Rational(1 - i % 2) for i in range(order + 1)),
    )


def _tan_pair(order: int) -> DerivativePair:
    # sin / cos: derivatives at 0 cycle with period 4
    sin_cycle = (0, 1, 0, -1)
    cos_cycle = (1, 0, -1, 0)
    return DerivativePair(
        tuple(Rational(sin_cycle[i % 4]) for i in range(order + 1)),
        tuple(Rational(cos_cycle[i % 4]) for i in range(order + 1)),
    )


def _logistic_pair(order: int) -> DerivativePair:
    # e^x / (e^x + 1)
    return DerivativePair(
        tuple(Rational(1) for _ in range(order + 1)),
        tuple(Rational(2 if i == 0 else 1) for i in range(order + 1)),
    )


def _integral_pair(order: int) -> DerivativePair:
    # int_0^1 v e^{xv} dv / int_0^1 e^{xv} dv
    return DerivativePair(
        tuple(Rational(1, i + 2) for i in range(order + 1)),
        tuple(Rational(1, i + 1) for i in range(order + 1)),
    )


_PAIRS: dict[DetVariant, Callable[[int], DerivativePair]] = {
    "tanh": _tanh_pair,
    "tan": _tan_pair,
    "logistic": _logistic_pair,
    "integral": _integral_pair,
}


def det_matrix(k: int, which: DetVariant) -> HessenbergMatrix:
    """The 2k x 2k Hessenberg matrix whose determinant yields B_{2k}."""
    _require_positive(k)
    if which not in _PAIRS:
        raise ValueError(f"unknown determinant variant: {which!r}")
    order = 2 * k - 1
    return derivative_matrix(_PAIRS[which](order), order)


def bernoulli_det(k: int, which: DetVariant) -> Rational:
    """B_{2k} from the (2k-1)-th derivative of p/q at 0 and the variant prefactor."""
    _require_positive(k)
    if which not in _PAIRS:
        raise ValueError(f"unknown determinant variant: {which!r}")
    order = 2 * k - 1
    pair = _PAIRS[which](order)
    # prefactors act on the bare determinant: (-1)^order q(0)^(order+1) (p/q)^(order)
    det = -Rational(pair.q_derivs[0]) ** (2 * k) * ratio_derivative(pair, order)
    four = 4**k  # 2^{2k}
    if which == "tanh":
        value = -k * det / ((four - 1) * (four // 2))
    elif which == "tan":
        value = sign(k) * k * det / ((four // 2) * (four - 1))
    elif which == "logistic":
        value = -k * det / ((four // 2) * (four - 1))
    else:
        value = -2 * k * det
    logger.debug("det route %s: B_%d = %s", which, 2 * k, value)
    return Rational(value)


# recursive routes


@cache
def _rec_tanh(k: int) -> Rational:
    four = 4**k
    acc = Rational(1)
    for ell in range(1, k):
        acc -= (
            binomial(2 * k - 1, 2 * ell - 1)
            * (4**ell - 1)
            * 4**ell
            * _rec_tanh(ell)
            / (2 * ell)
        )
    return Rational(k, (four - 1) * (four // 2)) * acc


@cache
def _rec_logistic(k: int) -> Rational:
    acc = Rational(1)
    for j in range(1, k):
        acc -= binomial(2 * k - 1, 2 * j - 1) * Rational(4**j - 1, j) * _rec_logistic(j)
    return Rational(k, 2 * (4**k - 1)) * acc


@cache
def _rec_integral(k: int) -> Rational:
    acc = Rational(2 * k - 1, 4 * k * (2 * k + 1))
    for ell in range(1, k):
        acc -= (
            Rational(1, 2 * k - 2 * ell + 1)
            * binomial(2 * k - 1, 2 * ell - 1)
            * _rec_integral(ell)
            / (2 * ell)
        )
    return 2 * k * acc


_RECURSIONS: dict[RecVariant, Callable[[int], Rational]] = {
    "tanh": _rec_tanh,
    "logistic": _rec_logistic,
    "integral": _rec_integral,
}


def bernoulli_rec(k: int, which: RecVariant) -> Rational:
    """B_{2k} from one of the three recursions, each with its own memo table."""
    _require_positive(k)
    if which not in _RECURSIONS:
        raise ValueError(f"unknown recursion variant: {which!r}")
    return _RECURSIONS[which](k)


# closed forms


def _closed_eta_sum(n: int) -> Rational:
    """sum_{j=1}^{n} (-1)^(j-1) (j-1)!/2^j S(n, j)."""
    return sum(
        (
            Rational(sign(j - 1) * factorial(j - 1) * stirling2(n, j), 2**j)
            for j in range(1, n + 1)
        ),
        Rational(0),
    )


def _zeta_bell_sum(k: int) -> Rational:
    """sum_{l=1}^{k} (-1)^l/l C(2k, k+l) S(k+l, l)."""
    return sum(
        (
            Rational(
                sign(ell) * binomial(2 * k, k + ell) * stirling2(k + ell, ell), ell
            )
            for ell in range(1, k + 1)
        ),
        Rational(0),
    )


def _s2_sum(n: int) -> Rational:
    """sum_{j=0}^{n} j!/(n+j)! sum_l (-1)^l C(n+j, j-l) S(n+l, l)."""
    return sum(
        (
            Rational(factorial(j) * s2_column_term(n, j), factorial(n + j))
            for j in range(n + 1)
        ),
        Rational(0),
    )


def bernoulli_closed(k: int, which: ClosedVariant) -> Rational:
    """B_{2k} from a closed form in second-kind Stirling numbers.

    `zeta_bell` carries a leading minus and `s2` a (2k)! factor; the forms
    without them do not reproduce B_2 (see `bernoulli_closed_as_printed`).
    """
    _require_positive(k)
    n = 2 * k
    if which == "eta":
        return Rational(n, 4**k - 1) * _closed_eta_sum(n)
    if which == "zeta_bell":
        return -Rational(n, binomial(2 * n, n)) * _zeta_bell_sum(n)
    if which == "s2":
        return factorial(n) * _s2_sum(n)
    raise ValueError(f"unknown closed-form variant: {which!r}")


def bernoulli_closed_as_printed(k: int, which: Literal["zeta_bell", "s2"]) -> Rational:
    """The two closed forms without their corrections, kept for adjudication."""
    _require_positive(k)
    n = 2 * k
    if which == "zeta_bell":
        return Rational(n, binomial(2 * n, n)) * _zeta_bell_sum(n)
    if which == "s2":
        return _s2_sum(n)
    raise ValueError(f"no printed form recorded for {which!r}")


# generalized and second-kind numbers


def generalized_bernoulli(n: int, r: Rational | int) -> Rational:
    """B_n^(r), the n-th exponential coefficient of (x/(e^x - 1))^r."""
    if n < 0:
        raise ValueError("n must be >= 0")
    r = Rational(r)
    total = Rational(0)
    for k in range(n + 1):
        term = Rational(s2_column_term(n, k), factorial(n + k))
        total += rising_factorial(r, k) * term
    return factorial(n) * total


def falling_factorial_poly(n: int) -> list[int]:
    """Integer coefficients of <v>_n = v(v-1)...(v-n+1), lowest degree first."""
    if n < 0:
        raise ValueError("n must be >= 0")
    poly = [1]
    for j in range(n):
        # multiply by (v - j)
        nxt = [0] * (len(poly) + 1)
        for d, c in enumerate(poly):
            nxt[d + 1] += c
            nxt[d] -= j * c
        poly = nxt
    return poly


def bernoulli2nd(n: int, which: SecondKindRoute = "fps_baseline") -> Rational:
    """b_n, the ordinary coefficients of x / log(1+x)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if which == "fps_baseline":
        return fps_div(constant(1, n), series_log1p_over_x(n))[n]
    if which == "stirling_sum":
        total = sum(
            (Rational(stirling1(n, ell), ell + 1) for ell in range(n + 1)),
            Rational(0),
        )
        return total / factorial(n)
    if which == "alt_sum":
        total = Rational(0)
        for m in range(n + 1):
            total += Rational(
                sign(m) * binomial(n + 1, m + 1) * stirling1(n + m, m),
                binomial(n + m, m),
            )
        return total / factorial(n)
    if which == "integral":
        # int_0^1 <v>_n dv, power rule termwise
        poly = falling_factorial_poly(n)
        integral = sum((Rational(c, d + 1) for d, c in enumerate(poly)), Rational(0))
        return integral / factorial(n)
    raise ValueError(f"unknown second-kind route: {which!r}")


# zeta / eta at negative odd integers


def zeta_neg(k: int) -> Rational:
    """zeta(1 - 2k) = -B_{2k} / (2k)."""
    _require_positive(k)
    return -bernoulli_baseline(2 * k) / (2 * k)


def eta_neg(k: int) -> Rational:
    """eta(1 - 2k) = (1 - 2^{2k}) zeta(1 - 2k)."""
    _require_positive(k)
    return (1 - 4**k) * zeta_neg(k)


# route registry and agreement

ROUTES: dict[str, Callable[[int], Rational]] = {
    **{f"det_{v}": (lambda k, v=v: bernoulli_det(k, v)) for v in DET_VARIANTS},
    **{f"rec_{v}": (lambda k, v=v: bernoulli_rec(k, v)) for v in REC_VARIANTS},
    **{f"closed_{v}": (lambda k, v=v: bernoulli_closed(k, v)) for v in CLOSED_VARIANTS},
}
"""Every non-baseline route to B_{2k}, keyed by route id."""

ROUTE_IDS: tuple[str, ...] = ("baseline", *ROUTES)

# source equation labels, emitted as output provenance

ROUTE_LABELS: dict[str, str] = {
    "baseline": "Bernoulli-Gen-Eq",
    "det_tanh": "Bernoulli-Determin-One",
    "det_tan": "Bernoulli-Determin-two",
    "det_logistic": "Bernoulli-Determin-3",
    "det_integral": "Bernoulli-Determin-4",
    "rec_tanh": "Bernou-REcurs-Relat-Eq",
    "rec_logistic": "Bernoulli-Recursive-2",
    "rec_integral": "Bernoulli-Recursive-T3",
    "closed_eta": "Helms-variant-ser27",
    "closed_zeta_bell": "Equal=0-Stirl-Bern",
    "closed_s2": "Equal-Stirl-Bern2nd",
}

SECOND_KIND_LABELS: dict[str, str] = {
    "fps_baseline": "bernoulli-second-dfn",
    "stirling_sum": "Nemes-1st-Bernoulli",
    "alt_sum": "real-power-log-r=-1",
    "integral": "falling-2ndbER",
}

SEQUENCE_LABELS: dict[str, str] = {
    "gen_bernoulli": "Equal-Stirl-Bern3rd",
    "zeta_neg": "abram-23.2.15",
    "eta_neg": "eta-zeta-equal",
}


def bernoulli_route(n: int, route: str = "baseline") -> Rational:
    """B_n via a named route; non-baseline routes need n even and >= 2."""
    if route == "baseline":
        return bernoulli_baseline(n)
    if route not in ROUTES:
        raise ValueError(f"unknown route: {route!r}")
    if n < 2 or n % 2:
        raise ValueError(f"route {route} needs an even index >= 2, got {n}")
    return ROUTES[route](n // 2)


@dataclass(frozen=True)
class RouteCheck:
    route: str
    index: int
    value: Rational
    expected: Rational
    label: str = ""

    @property
    def passed(self) -> bool:
        return self.value == self.expected


def route_checks(k_max: int) -> list[RouteCheck]:
    """Compare every registered B_{2k} route against the baseline, k = 1..k_max."""
    out = []
    for route in sorted(ROUTES):
        fn = ROUTES[route]
        for k in range(1, k_max + 1):
            check = RouteCheck(
                route, 2 * k, fn(k), bernoulli_baseline(2 * k), ROUTE_LABELS[route]
            )
            if not check.passed:
                logger.warning("route %s disagrees at B_%d", route, 2 * k)
            out.append(check)
    return out


def second_kind_checks(n_max: int) -> list[RouteCheck]:
    """Compare the b_n routes against the series baseline, n = 0..n_max."""
    out = []
    for route in SECOND_KIND_ROUTES[1:]:
        for n in range(n_max + 1):
            check = RouteCheck(
                f"b2_{route}",
                n,
                bernoulli2nd(n, route),
                bernoulli2nd(n, "fps_baseline"),
                SECOND_KIND_LABELS[route],
            )
            if not check.passed:
                logger.warning("second-kind route %s disagrees at b_%d", route, n)
            out.append(check)
    return out

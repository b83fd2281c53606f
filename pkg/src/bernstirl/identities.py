from __future__ import annotations

import inspect
import logging
from collections.abc import Callable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field

from bernstirl.bell import bell_partial, bell_special, family_args
from bernstirl.bernoulli import (
    ROUTE_LABELS,
    bernoulli_baseline,
    bernoulli_closed,
    bernoulli_closed_as_printed,
)
from bernstirl.exact_core import (
    Rational,
    binomial,
    double_factorial,
    factorial,
    falling_factorial,
    rising_factorial,
    sign,
)
from bernstirl.stirling import s1_column_term, s2_column_term, stirling1, stirling2

logger = logging.getLogger(__name__)

DEFAULT_MAX_N = 10
DEFAULT_R_SET: tuple[Rational, ...] = (
    Rational(-1),
    Rational(-1, 2),
    Rational(1, 2),
    Rational(2),
)

# (a, b) pairs for the Bell scaling identity
BELL_SCALINGS: tuple[tuple[Rational, Rational], ...] = (
    (Rational(2), Rational(3)),
    (Rational(-1, 2), Rational(1, 3)),
)

Param = Rational | int


class DomainError(ValueError):
    """Identity parameters outside the identity's domain."""


@dataclass(frozen=True)
class AuditGrid:
    max_n: int
    r_set: tuple[Rational, ...] = DEFAULT_R_SET

    def __post_init__(self) -> None:
        if self.max_n < 1:
            raise ValueError("max_n must be >= 1")
        object.__setattr__(
            self, "r_set", tuple(sorted({Rational(r) for r in self.r_set}))
        )


@dataclass(frozen=True)
class IdentityInstance:
    identity_id: str
    params: tuple[tuple[str, Param], ...]

    @classmethod
    def of(cls, identity_id: str, **params: Param) -> IdentityInstance:
        return cls(identity_id, tuple(params.items()))

    def sort_key(self) -> tuple:
        return (self.identity_id, tuple(v for _, v in self.params))


@dataclass(frozen=True)
class IdentityEntry:
    identity_id: str
    params: tuple[tuple[str, Param], ...]
    lhs: Rational
    rhs: Rational
    label: str = ""
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs


@dataclass(frozen=True)
class IdentityReport:
    entries: tuple[IdentityEntry, ...]

    @property
    def failures(self) -> list[IdentityEntry]:
        return [e for e in self.entries if not e.passed]

    @property
    def summary(self) -> dict[str, int]:
        failed = len(self.failures)
        return {
            "total": len(self.entries),
            "passed": len(self.entries) - failed,
            "failed": failed,
        }

    @property
    def ok(self) -> bool:
        return not self.failures


@dataclass(frozen=True)
class Adjudication:
    """A displayed formula checked against the value it is meant to produce.

    Passes when the displayed form misses the reference and the corrected
    form hits it.
    """

    defect: str
    index: int
    printed: Rational
    corrected: Rational
    reference: Rational
    label: str = ""

    @property
    def passed(self) -> bool:
        return self.printed != self.reference and self.corrected == self.reference


def _need(ok: bool, identity_id: str, constraint: str) -> None:
    if not ok:
        raise DomainError(f"{identity_id}: {constraint}")


def _zero() -> Rational:
    return Rational(0)


# evaluators: params -> (lhs, rhs)


def _helms_odd_zero(k: int) -> tuple[Rational, Rational]:
    _need(k >= 1, "helms_odd_zero", "k must be >= 1")
    n = 2 * k + 1
    lhs = sum(
        (
            Rational(sign(j) * factorial(j - 1) * stirling2(n, j), 2**j)
            for j in range(1, n + 1)
        ),
        _zero(),
    )
    return lhs, _zero()


def _bell_zeta_odd_zero(k: int) -> tuple[Rational, Rational]:
    _need(k >= 1, "bell_zeta_odd_zero", "k must be >= 1")
    lhs = sum(
        (
            Rational(
                sign(ell)
                * binomial(4 * k + 2, 2 * k + ell + 1)
                * stirling2(2 * k + ell + 1, ell),
                ell,
            )
            for ell in range(1, 2 * k + 2)
        ),
        _zero(),
    )
    return lhs, _zero()


def _s2_sum_odd_zero(n: int) -> tuple[Rational, Rational]:
    _need(n >= 1, "s2_sum_odd_zero", "n must be >= 1")
    m = 2 * n + 1
    lhs = sum(
        (
            Rational(factorial(j) * s2_column_term(m, j), factorial(m + j))
            for j in range(m + 1)
        ),
        _zero(),
    )
    return lhs, _zero()


def _diag_s1(n: int, r: int) -> tuple[Rational, Rational]:
    _need(n >= 0 and r >= 0, "diag_s1", "n and r must be >= 0")
    total = sum(
        (
            rising_factorial(-r, k) / factorial(k) * s1_column_term(n, k)
            for k in range(n + 1)
        ),
        _zero(),
    )
    return Rational(stirling1(n + r, r)), binomial(n + r, r) * total


def _diag_s2(n: int, r: int) -> tuple[Rational, Rational]:
    _need(n >= 0 and r >= 0, "diag_s2", "n and r must be >= 0")
    total = sum(
        (
            rising_factorial(-r, k) * Rational(s2_column_term(n, k), factorial(n + k))
            for k in range(n + 1)
        ),
        _zero(),
    )
    scale = Rational(factorial(n + r), factorial(r))
    return Rational(stirling2(n + r, r)), scale * total


def _conn_half_sides(n: int) -> tuple[Rational, Rational]:
    """Left side and the displayed right side of the r = 1/2 connection."""
    lhs = sum(
        (
            Rational(
                binomial(2 * k, k) * s2_column_term(n, k), 4**k * binomial(n + k, k)
            )
            for k in range(n + 1)
        ),
        _zero(),
    )
    rhs = _zero()
    for k in range(n + 1):
        inner = sum(
            (
                Rational(double_factorial(2 * ell - 3), double_factorial(2 * ell))
                * s1_column_term(k, ell)
                for ell in range(k + 1)
            ),
            _zero(),
        )
        rhs += stirling2(n, k) * inner
    return lhs, rhs


def _conn_half(n: int) -> tuple[Rational, Rational]:
    _need(n >= 0, "conn_half", "n must be >= 0")
    lhs, printed_rhs = _conn_half_sides(n)
    return lhs, -printed_rhs


def _conn_general(n: int, r: Rational) -> tuple[Rational, Rational]:
    _need(n >= 0, "conn_general", "n must be >= 0")
    r = Rational(r)
    lhs = sum(
        (
            rising_factorial(r, k) * Rational(s2_column_term(n, k), factorial(n + k))
            for k in range(n + 1)
        ),
        _zero(),
    )
    rhs = _zero()
    for ell in range(n + 1):
        inner = sum(
            (
                rising_factorial(-r, k) / factorial(k) * s1_column_term(ell, k)
                for k in range(ell + 1)
            ),
            _zero(),
        )
        rhs += stirling2(n, ell) * inner
    return lhs, rhs / factorial(n)


def _conn_log(n: int, r: Rational) -> tuple[Rational, Rational]:
    _need(n >= 0, "conn_log", "n must be >= 0")
    r = Rational(r)
    lhs = sum(
        (
            rising_factorial(r, k) / factorial(k) * s1_column_term(n, k)
            for k in range(n + 1)
        ),
        _zero(),
    )
    rhs = _zero()
    for k in range(n + 1):
        inner = sum(
            (
                rising_factorial(-r, m)
                * Rational(s2_column_term(k, m), factorial(k + m))
                for m in range(k + 1)
            ),
            _zero(),
        )
        rhs += factorial(k) * stirling1(n, k) * inner
    return lhs, rhs


def _hockey_stick(n: int, m: int) -> tuple[Rational, Rational]:
    _need(n >= 0 and m >= 0, "hockey_stick", "n and m must be >= 0")
    lhs = sum(binomial(k, m) for k in range(n + 1))
    return Rational(lhs), Rational(binomial(n + 1, m + 1))


def _bell_domain(identity_id: str, n: int, k: int) -> None:
    _need(0 <= k <= n, identity_id, "0 <= k <= n required")


def _bell_scaling(
    n: int, k: int, a: Rational, b: Rational
) -> tuple[Rational, Rational]:
    _bell_domain("bell_scaling", n, k)
    a, b = Rational(a), Rational(b)
    xs = [Rational(i) for i in range(1, n - k + 2)]
    scaled = [a * b**i * x for i, x in enumerate(xs, start=1)]
    return bell_partial(n, k, scaled), a**k * b**n * bell_partial(n, k, xs)


def _bell_family(identity_id: str, family: str) -> Callable[[int, int], tuple]:
    def evaluate(n: int, k: int) -> tuple[Rational, Rational]:
        _bell_domain(identity_id, n, k)
        lhs = bell_partial(n, k, family_args(family, max(n - k + 1, 0)))
        return lhs, bell_special(n, k, family)

    return evaluate


def _falling_rising(n: int, lam: Rational, form: int) -> tuple[Rational, Rational]:
    _need(n >= 0, "falling_rising", "n must be >= 0")
    _need(form in (0, 1), "falling_rising", "form must be 0 or 1")
    lam = Rational(lam)
    if form == 0:
        # (-lam)_n = (-1)^n <lam>_n
        return rising_factorial(-lam, n), sign(n) * falling_factorial(lam, n)
    # <-lam>_n = (-1)^n (lam)_n
    return falling_factorial(-lam, n), sign(n) * rising_factorial(lam, n)


# grids


def _odd_zero_grid(name: str) -> Callable[[AuditGrid], Iterator[dict]]:
    def grid(g: AuditGrid) -> Iterator[dict]:
        for i in range(1, g.max_n + 1):
            yield {name: i}

    return grid


def _square_grid(a: str, b: str) -> Callable[[AuditGrid], Iterator[dict]]:
    def grid(g: AuditGrid) -> Iterator[dict]:
        for i in range(g.max_n + 1):
            for j in range(g.max_n + 1):
                yield {a: i, b: j}

    return grid


def _triangle_grid(g: AuditGrid) -> Iterator[dict]:
    for n in range(g.max_n + 1):
        for k in range(n + 1):
            yield {"n": n, "k": k}


def _n_grid(g: AuditGrid) -> Iterator[dict]:
    for n in range(g.max_n + 1):
        yield {"n": n}


def _n_r_grid(g: AuditGrid) -> Iterator[dict]:
    for n in range(g.max_n + 1):
        for r in g.r_set:
            yield {"n": n, "r": r}


def _scaling_grid(g: AuditGrid) -> Iterator[dict]:
    for params in _triangle_grid(g):
        for a, b in BELL_SCALINGS:
            yield {**params, "a": a, "b": b}


def _falling_rising_grid(g: AuditGrid) -> Iterator[dict]:
    for n in range(g.max_n + 1):
        for lam in g.r_set:
            for form in (0, 1):
                yield {"n": n, "lam": lam, "form": form}


@dataclass(frozen=True)
class _Identity:
    evaluate: Callable[..., tuple[Rational, Rational]]
    grid: Callable[[AuditGrid], Iterator[dict]]
    label: str
    note: str = ""


CONN_HALF_NOTE = "right side negated: the displayed form gives 1 = -1 at n = 0"

REGISTRY: Mapping[str, _Identity] = {
    "bell_factorials": _Identity(
        _bell_family("bell_factorials", "factorials"),
        _triangle_grid,
        "Bell=0!s(n-k)",
    ),
    "bell_halves": _Identity(
        _bell_family("bell_halves", "halves"), _triangle_grid, "B-S-frac-value"
    ),
    "bell_ones": _Identity(
        _bell_family("bell_ones", "ones"), _triangle_grid, "Bell-stirling"
    ),
    "bell_ratio": _Identity(
        _bell_family("bell_ratio", "factorial_over_next"),
        _triangle_grid,
        "Bell-Stir1st=eq",
    ),
    "bell_scaling": _Identity(_bell_scaling, _scaling_grid, "Bell(n-k)"),
    "bell_zeta_odd_zero": _Identity(
        _bell_zeta_odd_zero, _odd_zero_grid("k"), "Equal=0-Stirl"
    ),
    "conn_general": _Identity(_conn_general, _n_r_grid, "Stirl-1st-2nd-conn"),
    "conn_half": _Identity(
        _conn_half, _n_grid, "Conn-Stirl-1st-2nd", note=CONN_HALF_NOTE
    ),
    "conn_log": _Identity(_conn_log, _n_r_grid, "log-exp-2stir-Eq"),
    "diag_s1": _Identity(_diag_s1, _square_grid("n", "r"), "diag-1st-stirl-eq"),
    "diag_s2": _Identity(_diag_s2, _square_grid("n", "r"), "diag-2nd-stirl-eq"),
    "falling_rising": _Identity(
        _falling_rising, _falling_rising_grid, "Fall-Factorial-Dfn-Eq"
    ),
    "helms_odd_zero": _Identity(
        _helms_odd_zero, _odd_zero_grid("k"), "Helms-variant=0"
    ),
    "hockey_stick": _Identity(
        _hockey_stick, _square_grid("n", "m"), "Identity58Spivey-art-2019"
    ),
    "s2_sum_odd_zero": _Identity(
        _s2_sum_odd_zero, _odd_zero_grid("n"), "Equal-Stirl-Bern2nd=0"
    ),
}

IDENTITY_IDS: tuple[str, ...] = tuple(sorted(REGISTRY))


def _bind(identity_id: str, evaluate: Callable, params: dict) -> dict:
    """Match params against the evaluator's parameter names."""
    names = list(inspect.signature(evaluate).parameters)
    missing = [p for p in names if p not in params]
    extra = [p for p in params if p not in names]
    if missing or extra:
        raise DomainError(
            f"{identity_id}: parameters must be {names}, "
            f"missing {missing}, unexpected {extra}"
        )
    return params


def check(instance: IdentityInstance) -> IdentityEntry:
    """Evaluate both sides of one identity instance exactly."""
    if instance.identity_id not in REGISTRY:
        raise ValueError(f"unknown identity: {instance.identity_id!r}")
    identity = REGISTRY[instance.identity_id]
    params = _bind(instance.identity_id, identity.evaluate, dict(instance.params))
    lhs, rhs = identity.evaluate(**params)
    entry = IdentityEntry(
        instance.identity_id,
        instance.params,
        Rational(lhs),
        Rational(rhs),
        identity.label,
        identity.note,
    )
    if entry.passed:
        logger.debug("%s %s ok", entry.identity_id, dict(entry.params))
    else:
        logger.warning(
            "%s failed at %s: %s != %s", entry.identity_id, dict(entry.params), lhs, rhs
        )
    return entry


def instances(grid: AuditGrid) -> list[IdentityInstance]:
    out = [
        IdentityInstance.of(identity_id, **params)
        for identity_id in IDENTITY_IDS
        for params in REGISTRY[identity_id].grid(grid)
    ]
    return sorted(out, key=IdentityInstance.sort_key)


def audit(max_n: int, r_set: Sequence[Param] = DEFAULT_R_SET) -> IdentityReport:
    """Run every registered identity over its grid up to max_n."""
    grid = AuditGrid(max_n, tuple(Rational(r) for r in r_set))
    report = IdentityReport(tuple(check(inst) for inst in instances(grid)))
    logger.info("identity audit max_n=%d: %s", max_n, report.summary)
    return report


def adjudications() -> list[Adjudication]:
    """The three known display defects, each at its smallest witness."""
    lhs, printed_rhs = _conn_half_sides(0)
    return [
        Adjudication(
            "closed_zeta_bell_sign",
            2,
            bernoulli_closed_as_printed(1, "zeta_bell"),
            bernoulli_closed(1, "zeta_bell"),
            bernoulli_baseline(2),
            ROUTE_LABELS["closed_zeta_bell"],
        ),
        Adjudication(
            "closed_s2_factorial",
            2,
            bernoulli_closed_as_printed(1, "s2"),
            bernoulli_closed(1, "s2"),
            bernoulli_baseline(2),
            ROUTE_LABELS["closed_s2"],
        ),
        Adjudication(
            "conn_half_sign",
            0,
            printed_rhs,
            -printed_rhs,
            lhs,
            REGISTRY["conn_half"].label,
        ),
    ]


@dataclass(frozen=True)
class VerifyReport:
    """Everything `verify` checks: identities, routes and adjudications."""

    identities: IdentityReport
    route_checks: tuple = field(default=())
    adjudications: tuple[Adjudication, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return (
            self.identities.ok
            and all(c.passed for c in self.route_checks)
            and all(a.passed for a in self.adjudications)
        )

from __future__ import annotations

from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass

from bernstirl.exact_core import Rational, binomial, factorial, rising_factorial, sign


@dataclass(frozen=True)
class PowerSeries:
    """Truncated power series sum_{n<=N} c_n x^n with Rational coefficients.

    Coefficients are ordinary (of x^n, not x^n/n!). Binary operations require
    equal order; use `truncate` to bring a series down first.
    """

    coeffs: tuple[Rational, ...]

    def __post_init__(self) -> None:
        if not self.coeffs:
            raise ValueError("a series needs at least the constant term")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> Rational:
        return self.coeffs[n]

    def __add__(self, other: PowerSeries) -> PowerSeries:
        _same_order(self, other)
        pairs = zip(self.coeffs, other.coeffs, strict=True)
        return PowerSeries(tuple(a + b for a, b in pairs))

    def __sub__(self, other: PowerSeries) -> PowerSeries:
        _same_order(self, other)
        pairs = zip(self.coeffs, other.coeffs, strict=True)
        return PowerSeries(tuple(a - b for a, b in pairs))

    def __neg__(self) -> PowerSeries:
        return PowerSeries(tuple(-a for a in self.coeffs))

    def __mul__(self, other: PowerSeries) -> PowerSeries:
        return fps_mul(self, other)

    def __truediv__(self, other: PowerSeries) -> PowerSeries:
        return fps_div(self, other)

    def scale(self, factor: Rational | int) -> PowerSeries:
        return PowerSeries(tuple(Rational(factor) * a for a in self.coeffs))

    def truncate(self, order: int) -> PowerSeries:
        if order < 0 or order > self.order:
            raise ValueError(f"order must be in [0, {self.order}]")
        return PowerSeries(self.coeffs[: order + 1])

    def exponential_coeffs(self) -> list[Rational]:
        """n! c_n, the coefficients of x^n/n!."""
        return [factorial(n) * c for n, c in enumerate(self.coeffs)]


def _same_order(a: PowerSeries, b: PowerSeries) -> None:
    if a.order != b.order:
        raise ValueError(f"orders differ: {a.order} != {b.order}")


def series(coeffs: Iterable[Rational | int]) -> PowerSeries:
    return PowerSeries(tuple(Rational(c) for c in coeffs))


def from_rule(order: int, rule: Callable[[int], Rational | int]) -> PowerSeries:
    """Series whose n-th ordinary coefficient is rule(n), n = 0..order."""
    if order < 0:
        raise ValueError("order must be >= 0")
    return series(rule(n) for n in range(order + 1))


def constant(value: Rational | int, order: int) -> PowerSeries:
    return from_rule(order, lambda n: value if n == 0 else 0)


def monomial(power: int, order: int) -> PowerSeries:
    return from_rule(order, lambda n: 1 if n == power else 0)


def fps_mul(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    """Cauchy product truncated at the common order."""
    _same_order(a, b)
    n_max = a.order
    out = []
    for n in range(n_max + 1):
        acc = Rational(0)
        for k in range(n + 1):
            if a.coeffs[k] and b.coeffs[n - k]:
                acc += a.coeffs[k] * b.coeffs[n - k]
        out.append(acc)
    return PowerSeries(tuple(out))


def fps_div(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    """q with q * b = a through the common order."""
    _same_order(a, b)
    b0 = b.coeffs[0]
    if b0 == 0:
        raise ValueError("divisor constant term must be nonzero")
    q: list[Rational] = []
    for n in range(a.order + 1):
        acc = a.coeffs[n]
        for k in range(1, n + 1):
            if b.coeffs[k]:
                acc -= b.coeffs[k] * q[n - k]
        q.append(acc / b0)
    return PowerSeries(tuple(q))


def derivative(f: PowerSeries) -> list[Rational]:
    """Coefficients of f' through order N-1."""
    return [n * f.coeffs[n] for n in range(1, f.order + 1)]


def fps_log1p(f: PowerSeries) -> PowerSeries:
    """log(1 + f) for f(0) = 0, from g' = f' / (1 + f) integrated termwise."""
    if f.coeffs[0] != 0:
        raise ValueError("f(0) must be 0")
    n_max = f.order
    if n_max == 0:
        return constant(0, 0)
    df = series(derivative(f))
    one_plus = series([1, *f.coeffs[1:n_max]])
    dg = fps_div(df, one_plus)
    return series([0, *(dg.coeffs[n - 1] / n for n in range(1, n_max + 1))])


def fps_exp(f: PowerSeries) -> PowerSeries:
    """exp(f) for f(0) = 0, from g' = f' g with g(0) = 1."""
    if f.coeffs[0] != 0:
        raise ValueError("f(0) must be 0")
    g: list[Rational] = [Rational(1)]
    for n in range(1, f.order + 1):
        acc = Rational(0)
        for k in range(1, n + 1):
            if f.coeffs[k]:
                acc += k * f.coeffs[k] * g[n - k]
        g.append(acc / n)
    return PowerSeries(tuple(g))


def fps_pow(f: PowerSeries, r: Rational | int) -> PowerSeries:
    """f^r = exp(r log f) for f(0) = 1."""
    if f.coeffs[0] != 1:
        raise ValueError("f(0) must be 1")
    r = Rational(r)
    if r == 0:
        return constant(1, f.order)
    shifted = f - constant(1, f.order)
    return fps_exp(fps_log1p(shifted).scale(r))


def fps_int_pow(f: PowerSeries, q: int) -> PowerSeries:
    """f^q for a nonnegative integer q by repeated multiplication."""
    if q < 0:
        raise ValueError("q must be >= 0")
    out = constant(1, f.order)
    for _ in range(q):
        out = fps_mul(out, f)
    return out


def power_principle(
    int_powers: Sequence[Sequence[Rational]], alpha: Rational | int, n: int
) -> Rational:
    """n-th exponential coefficient of f^alpha from those of integer powers.

    int_powers[q][j] is the j-th exponential coefficient of f^q, q = 0..n,
    for a series with f(0) = 1; the result is
    sum_{k<=n} (-alpha)_k/k! sum_{q<=k} (-1)^q C(k, q) int_powers[q][n].
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if len(int_powers) < n + 1:
        raise ValueError(f"need integer powers 0..{n}")
    alpha = Rational(alpha)
    total = Rational(0)
    for k in range(n + 1):
        inner = sum(
            (sign(q) * binomial(k, q) * int_powers[q][n] for q in range(k + 1)),
            Rational(0),
        )
        total += rising_factorial(-alpha, k) / factorial(k) * inner
    return total


def series_expm1_over_x(order: int) -> PowerSeries:
    """(e^x - 1)/x: c_n = 1/(n+1)!."""
    return from_rule(order, lambda n: Rational(1, factorial(n + 1)))


def series_log1p_over_x(order: int) -> PowerSeries:
    """log(1+x)/x: c_n = (-1)^n/(n+1)."""
    return from_rule(order, lambda n: Rational(sign(n), n + 1))


def series_exp(order: int) -> PowerSeries:
    return from_rule(order, lambda n: Rational(1, factorial(n)))

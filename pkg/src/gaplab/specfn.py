"""Special functions: Eulerian rows, power-weighted geometric sums, the
logarithmic integral, Gamma, and truncated series in 1/log x with exact
rational coefficients."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from scipy import integrate

EULERIAN_MAX_ORDER = 60


@lru_cache(maxsize=None)
def _eulerian_row(k: int) -> tuple[int, ...]:
    if k == 0:
        return (1,)
    prev = _eulerian_row(k - 1)
    row = []
    for i in range(k):
        left = (i + 1) * prev[i] if i < len(prev) else 0
        right = (k - i) * prev[i - 1] if 0 <= i - 1 < len(prev) else 0
        row.append(left + right)
    return tuple(row)


def eulerian_row(k: int) -> list[int]:
    """Row k of the Eulerian number triangle, exact integers. Row 0 is [1].

    Entry i counts the permutations of k elements with exactly i descents,
    so the row sums to k!. Rows are memoized; the lru_cache is safe to hit
    from several threads.
    """
    if k < 0:
        raise ValueError(f"row index must be >= 0, got {k}")
    if k > EULERIAN_MAX_ORDER:
        raise ValueError(f"row index {k} above the cap {EULERIAN_MAX_ORDER}")
    return list(_eulerian_row(k))


def geom_power_sum(k: int, q: float | None = None, *, one_minus_q: float | None = None):
    """Sum of n^k q^n over n >= 1 via the Eulerian closed form.

    The closed form divides by (1-q)^(k+1). Callers that know eps = 1 - q
    exactly must pass one_minus_q=eps so the factor never comes from a
    cancelling subtraction near q = 1. Exactly one of q, one_minus_q is
    accepted; exact types (Fraction) pass through unconverted.
    """
    if k < 0:
        raise ValueError(f"power must be >= 0, got {k}")
    if (q is None) == (one_minus_q is None):
        raise ValueError("pass exactly one of q or one_minus_q")
    if q is None:
        eps = one_minus_q
        q = 1 - eps
    else:
        eps = 1 - q
    if not 0 < q < 1:
        raise ValueError(f"q must lie strictly inside (0, 1), got {q}")
    if k == 0:
        return q / eps
    num = 0
    for coeff in eulerian_row(k):
        num = num * q + coeff
    return num * q / eps ** (k + 1)


@dataclass(frozen=True)
class LiValue:
    """A logarithmic-integral evaluation together with how it was obtained."""

    x: float
    value: float
    method: str
    terms_used: int | None = None


def li_quadrature(x: float, *, tol: float = 1e-10) -> LiValue:
    """Integral of 1/log(u) from 2 to x by adaptive quadrature."""
    if x <= 2:
        raise ValueError(f"the integral starts at 2; need x > 2, got {x}")
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    value, _ = integrate.quad(
        lambda u: 1.0 / math.log(u), 2.0, x, epsabs=0.0, epsrel=tol, limit=500
    )
    return LiValue(x=float(x), value=value, method="quadrature")


def li_asymptotic(x: float, *, terms: int | None = None) -> LiValue:
    """Truncated expansion (x/log x) * sum((n-1)!/log^(n-1) x, n = 1..terms).

    With terms omitted the series is cut at floor(log x), the point where its
    terms stop shrinking. Requires x >= e^2 so that cutoff is at least 2.
    """
    if x < math.e**2:
        raise ValueError(f"asymptotic form needs x >= e^2, got {x}")
    log_x = math.log(x)
    n_terms = math.floor(log_x) if terms is None else terms
    if n_terms < 1:
        raise ValueError(f"need at least one term, got {n_terms}")
    term = x / log_x
    total = term
    for n in range(2, n_terms + 1):
        term *= (n - 1) / log_x
        total += term
    return LiValue(x=float(x), value=total, method="asymptotic", terms_used=n_terms)


def gamma_real(z: float) -> float:
    """Gamma on the positive real axis."""
    if z <= 0:
        raise ValueError(f"need z > 0, got {z}")
    return math.gamma(z)


def _mul_truncated(a: list[Fraction], b: list[Fraction], order: int) -> list[Fraction]:
    out = [Fraction(0)] * (order + 1)
    for i, ai in enumerate(a[: order + 1]):
        if ai == 0:
            continue
        for j in range(order + 1 - i):
            out[i + j] += ai * b[j]
    return out


@dataclass(frozen=True)
class InverseLogSeries:
    """Truncated formal series sum(c_n / L^n, n = 0..N), c_n exact rationals.

    L stands for log x. All arithmetic truncates to the shorter operand, and
    every coefficient is normalized to Fraction on construction. Floats are
    taken at their exact binary value.
    """

    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not self.coeffs:
            raise ValueError("series needs at least the constant coefficient")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n]

    def __add__(self, other: "InverseLogSeries") -> "InverseLogSeries":
        n = min(self.order, other.order)
        return InverseLogSeries(
            tuple(a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs[: n + 1]))
        )

    def __sub__(self, other: "InverseLogSeries") -> "InverseLogSeries":
        n = min(self.order, other.order)
        return InverseLogSeries(
            tuple(a - b for a, b in zip(self.coeffs[: n + 1], other.coeffs[: n + 1]))
        )

    def __mul__(self, other):
        if isinstance(other, InverseLogSeries):
            n = min(self.order, other.order)
            return InverseLogSeries(
                tuple(_mul_truncated(list(self.coeffs), list(other.coeffs), n))
            )
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, factor) -> "InverseLogSeries":
        f = Fraction(factor)
        return InverseLogSeries(tuple(c * f for c in self.coeffs))

    def shift(self, places: int = 1) -> "InverseLogSeries":
        """Multiply by L^(-places) at fixed order; top coefficients fall off."""
        if places < 0:
            raise ValueError(f"shift must be >= 0, got {places}")
        padded = (Fraction(0),) * places + self.coeffs
        return InverseLogSeries(padded[: self.order + 1])

    def reciprocal(self) -> "InverseLogSeries":
        """Multiplicative inverse; the constant term must be exactly 1."""
        if self.coeffs[0] != 1:
            raise ValueError("reciprocal needs constant term 1")
        out = [Fraction(1)]
        for n in range(1, self.order + 1):
            acc = Fraction(0)
            for j in range(1, n + 1):
                acc += self.coeffs[j] * out[n - j]
            out.append(-acc)
        return InverseLogSeries(tuple(out))

    def power(self, alpha) -> "InverseLogSeries":
        """(series)^alpha by the binomial expansion, alpha any rational.

        The constant term must be 1. Negative and fractional alpha are fine;
        the expansion terminates because the non-constant part is nilpotent
        at fixed truncation order.
        """
        if self.coeffs[0] != 1:
            raise ValueError("power needs constant term 1")
        a = Fraction(alpha)
        n = self.order
        u = [Fraction(0)] + list(self.coeffs[1:])
        acc = [Fraction(0)] * (n + 1)
        acc[0] = Fraction(1)
        u_m = [Fraction(1)] + [Fraction(0)] * n
        coef = Fraction(1)
        for m in range(1, n + 1):
            u_m = _mul_truncated(u_m, u, n)
            coef = coef * (a - (m - 1)) / m
            for idx in range(n + 1):
                acc[idx] += coef * u_m[idx]
        return InverseLogSeries(tuple(acc))

    def evaluate(self, log_x: float) -> float:
        """Horner evaluation at L = log_x, in floats."""
        total = 0.0
        for c in reversed(self.coeffs):
            total = total / log_x + float(c)
        return total


def series_from(coeffs: Iterable) -> InverseLogSeries:
    return InverseLogSeries(tuple(Fraction(c) for c in coeffs))


def series_one(order: int) -> InverseLogSeries:
    return InverseLogSeries((Fraction(1),) + (Fraction(0),) * order)


def li_series(order: int) -> InverseLogSeries:
    """Formal tail of the Li expansion: Li(x) ~ (x/L) * sum(n!/L^n)."""
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    return InverseLogSeries(tuple(Fraction(math.factorial(n)) for n in range(order + 1)))

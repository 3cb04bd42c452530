"""Twin-pair density constant, per-gap arithmetic weights, and the
expected-count model for individual gap sizes."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .errors import ModelDomainError
from .sieve import SieveConfig, iter_prime_blocks, small_primes

#: Reference value of 2 * prod(1 - (p-1)^-2) over odd primes.
TWIN_CONSTANT = 1.320323631693739


@dataclass(frozen=True)
class TwinConstant:
    value: float
    prime_limit: int
    tail_bound: float


def twin_prime_constant(prime_limit: int) -> TwinConstant:
    """Partial product of the twin-pair constant over odd primes <= prime_limit.

    tail_bound is a crude estimate of the truncation error, of the order of
    the omitted sum of 1/p^2 over p > prime_limit.
    """
    if prime_limit < 3:
        raise ValueError(f"need prime_limit >= 3, got {prime_limit}")
    product = 1.0
    for block in iter_prime_blocks(SieveConfig(prime_limit)):
        ps = block[block > 2].astype(np.float64)
        if ps.size:
            product *= float(np.prod(1.0 - 1.0 / (ps - 1.0) ** 2))
    value = 2.0 * product
    tail_bound = 2.0 * value / (prime_limit * math.log(prime_limit))
    return TwinConstant(value=value, prime_limit=prime_limit, tail_bound=tail_bound)


def singular_factor(d: int) -> Fraction:
    """prod((p-1)/(p-2)) over odd primes p dividing d, exact.

    Equals 1 for d with no odd prime factor; only the squarefree odd part
    of d matters.
    """
    if d < 1:
        raise ValueError(f"gap must be >= 1, got {d}")
    n = d
    while n % 2 == 0:
        n //= 2
    out = Fraction(1)
    p = 3
    while p * p <= n:
        if n % p == 0:
            out *= Fraction(p - 1, p - 2)
            while n % p == 0:
                n //= p
        p += 2
    if n > 1:
        out *= Fraction(n - 1, n - 2)
    return out


class BdAverage(NamedTuple):
    sum: float
    predicted: float


def bd_partial_sum(n: int) -> BdAverage:
    """Sum of singular_factor(m) for m = 1..n next to its mean value 2n/C2.

    The weights are accumulated sieve-style: one pass per odd prime <= n
    multiplying the slots it divides.
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    values = np.ones(n + 1)
    for p in small_primes(n).tolist():
        if p == 2:
            continue
        values[p::p] *= (p - 1) / (p - 2)
    return BdAverage(sum=float(values[1:].sum()), predicted=2.0 * n / TWIN_CONSTANT)


def tau_model(d: int, x: float, pi_x: float, *, c2: float = TWIN_CONSTANT) -> float:
    """Expected number of consecutive-prime pairs <= x with gap exactly d.

    C2 * pi(x)^2 / x for d = 2 and d = 4; larger even d additionally carry
    the arithmetic weight of d and a geometric attenuation with ratio
    1 - 2 pi(x)/x per unit of d/2 beyond the first.
    """
    if d < 2 or d % 2:
        raise ValueError(f"the model covers even gaps >= 2, got {d}")
    if pi_x <= 0:
        raise ValueError(f"pi_x must be positive, got {pi_x}")
    if 2 * pi_x >= x:
        raise ModelDomainError(
            f"model needs pi(x) < x/2, got pi_x={pi_x} at x={x}"
        )
    base = c2 * pi_x * pi_x / x
    if d in (2, 4):
        return base
    attenuation = (1.0 - 2.0 * pi_x / x) ** (d // 2 - 1)
    return base * float(singular_factor(d)) * attenuation

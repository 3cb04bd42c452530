"""Independent reference implementations used only to check the library.

Nothing here imports gaplab. Slow and obvious beats fast and clever: trial
division, brute-force permutation counting, direct series summation.
"""
from __future__ import annotations

import math
from fractions import Fraction
from itertools import permutations


def trial_division_primes(limit: int) -> list[int]:
    out = []
    for n in range(2, limit + 1):
        if all(n % p for p in range(2, math.isqrt(n) + 1)):
            out.append(n)
    return out


def simple_sieve_primes(limit: int) -> list[int]:
    """Plain Eratosthenes over all integers, no wheel, no segmentation."""
    if limit < 2:
        return []
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            for m in range(p * p, limit + 1, p):
                flags[m] = 0
    return [n for n in range(2, limit + 1) if flags[n]]


def census_from_primes(primes: list[int], x: int):
    """Gap histogram over pairs with the larger member <= x."""
    below = [p for p in primes if p <= x]
    counts: dict[int, int] = {}
    for a, b in zip(below, below[1:]):
        counts[b - a] = counts.get(b - a, 0) + 1
    return dict(sorted(counts.items())), len(below), below[-1] if below else None


def eulerian_by_descents(k: int) -> list[int]:
    """Row k of the Eulerian triangle by brute-force descent counting."""
    if k == 0:
        return [1]
    row = [0] * k
    for perm in permutations(range(k)):
        descents = sum(1 for i in range(k - 1) if perm[i] > perm[i + 1])
        row[descents] += 1
    return row


def geom_sum_direct(k: int, q: float, rel_tol: float = 1e-14) -> float:
    """Sum n^k q^n term by term until the tail is negligible."""
    total = 0.0
    n = 1
    while True:
        term = n**k * q**n
        total += term
        # once n > k the terms decay at least geometrically with ratio dominated by q
        if n > k and term < rel_tol * total:
            return total
        n += 1
        if n > 10_000_000:
            raise RuntimeError("direct summation failed to converge")


def geom_sum_closed_exact(k: int, q: Fraction) -> Fraction:
    """Closed form evaluated entirely in rationals, rows from descent counting."""
    if k == 0:
        return q / (1 - q)
    row = eulerian_by_descents(k)
    num = Fraction(0)
    for i, coeff in enumerate(row):
        num += coeff * q ** (k - i)
    return num / (1 - q) ** (k + 1)


def factor_odd_part(d: int) -> list[int]:
    """Distinct odd prime factors of d, by trial division."""
    n = d
    while n % 2 == 0:
        n //= 2
    out = []
    p = 3
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 2
    if n > 1:
        out.append(n)
    return out


def singular_factor_direct(d: int) -> Fraction:
    out = Fraction(1)
    for p in factor_odd_part(d):
        out *= Fraction(p - 1, p - 2)
    return out

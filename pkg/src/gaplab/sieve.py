"""Segmented odds-only sieve of Eratosthenes with ordered block delivery.

Segments are numpy boolean masks over odd numbers, so a segment of 2^22 bits
covers 2^23 integers. Blocks of primes come out in ascending order even when
segments are sieved on a thread pool.
"""
from __future__ import annotations

import math
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

HARD_LIMIT = 1 << 40
MIN_SEGMENT_BITS = 1 << 10
DEFAULT_SEGMENT_BITS = 1 << 22


@dataclass(frozen=True)
class SieveConfig:
    """Sieve geometry: inclusive limit and bits (odd numbers) per segment."""

    limit: int
    segment_bits: int = DEFAULT_SEGMENT_BITS

    def __post_init__(self) -> None:
        if self.limit < 2:
            raise ValueError(f"sieve limit must be >= 2, got {self.limit}")
        if self.limit > HARD_LIMIT:
            raise ValueError(f"sieve limit must be <= 2^40, got {self.limit}")
        bits = self.segment_bits
        if bits < MIN_SEGMENT_BITS or bits & (bits - 1):
            raise ValueError(
                f"segment_bits must be a power of two >= {MIN_SEGMENT_BITS}, got {bits}"
            )


def small_primes(limit: int) -> np.ndarray:
    """All primes <= limit by a plain byte sieve; fine up to ~10^8."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            start = p * p
            flags[start::p] = b"\x00" * ((limit - start) // p + 1)
    return np.flatnonzero(np.frombuffer(bytes(flags), dtype=np.uint8)).astype(np.int64)


def _segment_primes(low: int, hi: int, base: list[int], drop_one: bool) -> np.ndarray:
    """Primes among the odd numbers low, low+2, ..., while <= hi (low odd)."""
    count = (hi - low) // 2 + 1
    mask = np.ones(count, dtype=bool)
    if drop_one:
        mask[0] = False  # the number 1
    for p in base:
        start = p * p
        if start > hi:
            break
        if start < low:
            start = ((low + p - 1) // p) * p
            if start % 2 == 0:
                start += p
            if start > hi:
                continue
        mask[(start - low) >> 1 :: p] = False
    return low + 2 * np.flatnonzero(mask)


def iter_prime_blocks(config: SieveConfig, *, threads: int = 1) -> Iterator[np.ndarray]:
    """Yield ascending int64 blocks that concatenate to all primes <= limit.

    With threads > 1 the segments are sieved concurrently but results are
    still delivered in segment order, so consumers see a sorted stream.
    """
    limit = config.limit
    yield np.array([2], dtype=np.int64)
    if limit < 3:
        return
    base = small_primes(math.isqrt(limit))[1:].tolist()  # odd base primes
    span = 2 * config.segment_bits
    n_segments = limit // span + 1

    def segment(i: int) -> np.ndarray:
        low = span * i + 1
        hi = min(span * (i + 1) - 1, limit)
        if hi < low:
            return np.empty(0, dtype=np.int64)
        return _segment_primes(low, hi, base, drop_one=(i == 0))

    if threads <= 1:
        for i in range(n_segments):
            block = segment(i)
            if block.size:
                yield block
        return

    with ThreadPoolExecutor(max_workers=threads) as pool:
        pending: deque = deque()
        next_i = 0
        while next_i < n_segments or pending:
            while next_i < n_segments and len(pending) < threads + 2:
                pending.append(pool.submit(segment, next_i))
                next_i += 1
            block = pending.popleft().result()
            if block.size:
                yield block


def iter_primes(config: SieveConfig, *, threads: int = 1) -> Iterator[int]:
    """Primes <= limit, one python int at a time."""
    for block in iter_prime_blocks(config, threads=threads):
        yield from block.tolist()


def enumerate_primes(
    config: SieveConfig, consumer: Callable[[int], None], *, threads: int = 1
) -> None:
    """Feed every prime <= limit to consumer, in ascending order."""
    for block in iter_prime_blocks(config, threads=threads):
        for p in block.tolist():
            consumer(p)


def prime_count(limit: int, *, segment_bits: int = DEFAULT_SEGMENT_BITS) -> int:
    """pi(limit): number of primes <= limit. Anything below 2 counts zero."""
    if limit < 2:
        return 0
    config = SieveConfig(limit, segment_bits)
    return sum(int(block.size) for block in iter_prime_blocks(config))

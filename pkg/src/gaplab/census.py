"""Gap censuses: histograms of gaps between consecutive primes.

A census at threshold x counts a pair (p, p') of consecutive primes once the
larger member p' is <= x. Censuses are built at geometric checkpoints
x = 2^j in a single sieve pass and can be persisted in a small text format.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable, Iterator, Sequence

import numpy as np

from .errors import CensusParseError, CensusValidationError
from .sieve import DEFAULT_SEGMENT_BITS, SieveConfig, iter_prime_blocks

FORMAT_HEADER = "# gap-census v1"
_META_RE = re.compile(r"^#\s*x=(\d+)\s+pi=(\d+)\s+p_last=(\d+)\s*$")


@dataclass(frozen=True)
class GapCensus:
    """Immutable gap histogram at a single threshold.

    counts maps gap size d to the number of consecutive-prime pairs with the
    larger prime <= x. pi_x is the prime count at x; p_last the largest prime
    <= x (None if unknown, e.g. for externally supplied tables).
    """

    x: int
    counts: dict[int, int]
    pi_x: int
    p_last: int | None = None

    def lookup(self, d: int) -> int:
        """tau_d(x): pairs of consecutive primes <= x at distance exactly d."""
        if d < 1:
            raise ValueError(f"gap must be >= 1, got {d}")
        return self.counts.get(d, 0)

    @property
    def max_gap(self) -> int:
        return max(self.counts) if self.counts else 0

    @property
    def total_pairs(self) -> int:
        return sum(self.counts.values())

    def validate(self) -> None:
        """Check conservation and parity identities; raise on any violation.

        Pair count must equal pi(x) - 1, the gap-weighted sum must telescope
        to p_last - 2, the only odd gap is the single d = 1 pair (2, 3).
        """
        total = self.total_pairs
        if total != self.pi_x - 1:
            raise CensusValidationError(
                f"x={self.x}: {total} pairs recorded but pi(x)-1 = {self.pi_x - 1}"
            )
        if self.p_last is not None:
            weighted = sum(d * c for d, c in self.counts.items())
            if weighted != self.p_last - 2:
                raise CensusValidationError(
                    f"x={self.x}: gap-weighted sum {weighted} != p_last - 2 = {self.p_last - 2}"
                )
        for d in self.counts:
            if d != 1 and d % 2:
                raise CensusValidationError(f"x={self.x}: impossible odd gap {d}")
        if (self.counts.get(1, 0) == 1) != (self.x >= 3):
            raise CensusValidationError(f"x={self.x}: the (2, 3) pair is miscounted")


@dataclass(frozen=True)
class CensusSeries:
    """Censuses at strictly doubling thresholds, ascending."""

    checkpoints: tuple[GapCensus, ...]

    def __post_init__(self) -> None:
        xs = [c.x for c in self.checkpoints]
        for a, b in zip(xs, xs[1:]):
            if b != 2 * a:
                raise CensusValidationError(
                    f"checkpoint thresholds must double: {a} is followed by {b}"
                )

    def __iter__(self) -> Iterator[GapCensus]:
        return iter(self.checkpoints)

    def __len__(self) -> int:
        return len(self.checkpoints)

    @property
    def thresholds(self) -> tuple[int, ...]:
        return tuple(c.x for c in self.checkpoints)

    def at(self, x: int) -> GapCensus:
        for c in self.checkpoints:
            if c.x == x:
                return c
        raise KeyError(f"no census at threshold {x}")

    def window(self, x_min: int | None = None, x_max: int | None = None) -> "CensusSeries":
        chosen = tuple(
            c
            for c in self.checkpoints
            if (x_min is None or c.x >= x_min) and (x_max is None or c.x <= x_max)
        )
        return CensusSeries(chosen)


class _GapAccumulator:
    """Streaming histogram over prime blocks; snapshot() is cheap."""

    def __init__(self) -> None:
        self._hist = np.zeros(1024, dtype=np.int64)
        self._n = 0
        self._last: int | None = None

    def feed(self, primes: np.ndarray) -> None:
        if primes.size == 0:
            return
        if self._last is None:
            gaps = np.diff(primes)
        else:
            gaps = np.diff(primes, prepend=self._last)
        if gaps.size:
            counts = np.bincount(gaps, minlength=self._hist.size)
            if counts.size > self._hist.size:
                self._hist = np.pad(self._hist, (0, counts.size - self._hist.size))
            self._hist += counts
        self._n += int(primes.size)
        self._last = int(primes[-1])

    def snapshot(self, x: int) -> GapCensus:
        nz = np.flatnonzero(self._hist)
        counts = {int(d): int(self._hist[d]) for d in nz}
        return GapCensus(x=x, counts=counts, pi_x=self._n, p_last=self._last)


def build_census(
    limit: int,
    checkpoint_exponents: Sequence[int] | Iterable[int],
    *,
    segment_bits: int = DEFAULT_SEGMENT_BITS,
    threads: int = 1,
) -> CensusSeries:
    """One sieve pass to <= limit, snapshotting the histogram at each x = 2^j.

    checkpoint_exponents must be strictly ascending; the largest 2^j must not
    exceed limit. Every returned census satisfies validate().
    """
    exps = list(checkpoint_exponents)
    if not exps:
        raise ValueError("checkpoint exponent list is empty")
    if any(b <= a for a, b in zip(exps, exps[1:])):
        raise ValueError(f"checkpoint exponents must be strictly ascending, got {exps}")
    if exps[0] < 1:
        raise ValueError(f"checkpoint exponents must be >= 1, got {exps[0]}")
    if 2 ** exps[-1] > limit:
        raise ValueError(f"largest checkpoint 2^{exps[-1]} exceeds limit {limit}")

    thresholds = [1 << j for j in exps]
    acc = _GapAccumulator()
    snapshots: list[GapCensus] = []
    ti = 0
    config = SieveConfig(limit, segment_bits)
    for block in iter_prime_blocks(config, threads=threads):
        while ti < len(thresholds) and block.size and thresholds[ti] <= block[-1]:
            cut = int(np.searchsorted(block, thresholds[ti], side="right"))
            acc.feed(block[:cut])
            snapshots.append(acc.snapshot(thresholds[ti]))
            block = block[cut:]
            ti += 1
        acc.feed(block)
    while ti < len(thresholds):
        snapshots.append(acc.snapshot(thresholds[ti]))
        ti += 1
    return CensusSeries(tuple(snapshots))


def export_census(census: GapCensus, destination: str | Path | IO[str]) -> None:
    """Write the versioned text format: header, metadata, ascending d<TAB>count."""
    if census.p_last is None:
        raise CensusValidationError("cannot export a census without p_last metadata")
    lines = [FORMAT_HEADER, f"# x={census.x} pi={census.pi_x} p_last={census.p_last}"]
    for d in sorted(census.counts):
        lines.append(f"{d}\t{census.counts[d]}")
    text = "\n".join(lines) + "\n"
    if hasattr(destination, "write"):
        destination.write(text)
    else:
        Path(destination).write_text(text)


def import_census(
    source: str | Path | IO[str],
    *,
    x: int | None = None,
    pi_x: int | None = None,
    p_last: int | None = None,
) -> GapCensus:
    """Parse a census file. Also accepts bare two-column tables.

    Metadata can come from the header line or the keyword arguments; when both
    are present they must agree. Bare tables need at least x and pi_x passed in.
    """
    if hasattr(source, "read"):
        text = source.read()
    else:
        text = Path(source).read_text()

    header_x = header_pi = header_plast = None
    counts: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            m = _META_RE.match(line)
            if m:
                header_x, header_pi, header_plast = map(int, m.groups())
            continue
        parts = line.split()
        if len(parts) != 2:
            raise CensusParseError(
                f"line {lineno}: expected 'gap<TAB>count', got {raw!r}", line=lineno
            )
        try:
            d, c = int(parts[0]), int(parts[1])
        except ValueError:
            raise CensusParseError(
                f"line {lineno}: non-integer field in {raw!r}", line=lineno
            ) from None
        if d < 1 or c < 0:
            raise CensusParseError(
                f"line {lineno}: need gap >= 1 and count >= 0, got {d} and {c}",
                line=lineno,
            )
        if d in counts:
            raise CensusParseError(f"line {lineno}: duplicate gap {d}", line=lineno)
        counts[d] = c

    def merged(name: str, from_header: int | None, from_arg: int | None) -> int | None:
        if from_header is not None and from_arg is not None and from_header != from_arg:
            raise CensusValidationError(
                f"{name} mismatch: header says {from_header}, caller says {from_arg}"
            )
        return from_header if from_header is not None else from_arg

    final_x = merged("x", header_x, x)
    final_pi = merged("pi", header_pi, pi_x)
    final_plast = merged("p_last", header_plast, p_last)
    if final_x is None or final_pi is None:
        raise CensusValidationError(
            "file carries no metadata header; pass x and pi_x explicitly"
        )
    return GapCensus(
        x=final_x, counts=dict(sorted(counts.items())), pi_x=final_pi, p_last=final_plast
    )


def load_series(source: str | Path | Iterable[str | Path]) -> CensusSeries:
    """Load a CensusSeries from a directory of *.txt files or a list of paths."""
    if isinstance(source, (str, Path)):
        root = Path(source)
        paths = sorted(root.glob("*.txt")) if root.is_dir() else [root]
    else:
        paths = [Path(p) for p in source]
    if not paths:
        raise FileNotFoundError(f"no census files found in {source}")
    censuses = sorted((import_census(p) for p in paths), key=lambda c: c.x)
    return CensusSeries(tuple(censuses))

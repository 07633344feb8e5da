"""Independent ground truth: exhaustive enumeration and seeded Monte Carlo.

Nothing here shares code with the analytic methods. The brute-force path
enumerates all 2^n outcome strings as integers and weighs them exactly; the
Monte Carlo path simulates with a counter-based generator split into
per-chunk substreams so the estimate is reproducible bit-for-bit regardless
of how many workers run the chunks.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .distribution import RunDistribution
from .methods import TrialSpec, _check_r

__all__ = [
    "BRUTE_FORCE_CAP",
    "BruteForceCapError",
    "McConfig",
    "McEstimate",
    "longest_run_of",
    "brute_force_prob",
    "brute_force_pmf",
    "monte_carlo_prob",
]

# 2^20 outcomes enumerate in seconds; anything past that deserves the
# analytic methods instead.
BRUTE_FORCE_CAP = 20


class BruteForceCapError(ValueError):
    """Enumeration was requested for more trials than the cap allows."""


@dataclass(frozen=True)
class McConfig:
    """Monte Carlo sampling plan; chunk_size sets the substream granularity."""

    samples: int
    seed: int
    chunk_size: int = 1 << 16

    def __post_init__(self) -> None:
        if self.samples < 1:
            raise ValueError(f"samples must be >= 1, got {self.samples}")
        if self.chunk_size < 1:
            raise ValueError(f"chunk_size must be >= 1, got {self.chunk_size}")


@dataclass(frozen=True)
class McEstimate:
    """Simulation estimate with its binomial standard error."""

    estimate: float
    samples: int
    std_error: float


def longest_run_of(bits: Iterable[int]) -> int:
    """Length of the longest block of consecutive 1s; 0 for an empty sequence.

    >>> longest_run_of([1, 1, 0, 1, 1, 1, 0, 1, 0, 0])
    3
    """
    best = current = 0
    for bit in bits:
        current = current + 1 if bit else 0
        if current > best:
            best = current
    return best


def _longest_run_int(x: int) -> int:
    # each x &= x >> 1 shortens every run by one; the iteration count is the
    # longest run length
    length = 0
    while x:
        x &= x >> 1
        length += 1
    return length


def _has_run_int(x: int, r: int) -> bool:
    # doubling trick: after the loop, set bits mark starts of runs >= r
    span = 1
    while span < r and x:
        x &= x >> min(span, r - span)
        span += min(span, r - span)
    return x != 0


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise BruteForceCapError(
            f"brute force enumerates 2^n outcomes; n={n} exceeds the cap of {cap}"
        )


def _weight_sum(counts: Sequence[int], spec: TrialSpec) -> Fraction | float:
    n = spec.n
    if spec.exact:
        p, q = spec.p, spec.q
        return sum((cnt * p**c * q ** (n - c) for c, cnt in enumerate(counts)), Fraction(0))
    p = float(spec.p)
    q = 1.0 - p
    return math.fsum(cnt * p**c * q ** (n - c) for c, cnt in enumerate(counts))


def brute_force_prob(spec: TrialSpec, r: int, cap: int = BRUTE_FORCE_CAP) -> Fraction | float:
    """Run probability by exhaustive enumeration of all 2^n outcomes.

    Outcomes are grouped by success count so only n+1 exact weights are ever
    formed. Exact for Fraction p, float otherwise.
    """
    _check_r(r)
    n = spec.n
    _check_cap(n, cap)
    if r > n:
        return Fraction(0) if spec.exact else 0.0
    counts = [0] * (n + 1)
    for x in range(1 << n):
        if _has_run_int(x, r):
            counts[x.bit_count()] += 1
    return _weight_sum(counts, spec)


def brute_force_pmf(spec: TrialSpec, cap: int = BRUTE_FORCE_CAP) -> RunDistribution:
    """Exact longest-run pmf by enumeration; the distribution module's oracle."""
    if not spec.exact:
        raise ValueError("brute_force_pmf requires an exact (Fraction) p")
    n = spec.n
    _check_cap(n, cap)
    counts = [[0] * (n + 1) for _ in range(n + 1)]
    for x in range(1 << n):
        counts[_longest_run_int(x)][x.bit_count()] += 1
    pmf = tuple(_weight_sum(row, spec) for row in counts)
    return RunDistribution(spec=spec, pmf=pmf)


def _chunk_hits(n: int, p: float, r: int, seed: int, index: int, size: int) -> int:
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy=seed, spawn_key=(index,))))
    bits = rng.random((size, n)) < p
    run = np.zeros(size, dtype=np.int64)
    hit = np.zeros(size, dtype=bool)
    for j in range(n):
        run = np.where(bits[:, j], run + 1, 0)
        hit |= run >= r
    return int(np.count_nonzero(hit))


def monte_carlo_prob(spec: TrialSpec, r: int, cfg: McConfig, workers: int = 1) -> McEstimate:
    """Estimate the run probability by simulation.

    Chunk i draws from Philox keyed by SeedSequence(seed, spawn_key=(i,)) and
    contributes an integer hit count, so the estimate is a pure function of
    (seed, samples, chunk_size) and does not depend on the worker count.
    Working memory is about 8 * chunk_size * n bytes per in-flight chunk.
    """
    _check_r(r)
    p = float(spec.p)
    n = spec.n
    plan = [
        (i, min(cfg.chunk_size, cfg.samples - i * cfg.chunk_size))
        for i in range((cfg.samples + cfg.chunk_size - 1) // cfg.chunk_size)
    ]
    if workers <= 1:
        hits = [_chunk_hits(n, p, r, cfg.seed, i, size) for i, size in plan]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            hits = list(pool.map(lambda job: _chunk_hits(n, p, r, cfg.seed, *job), plan))
    total = sum(hits)
    estimate = total / cfg.samples
    std_error = math.sqrt(estimate * (1.0 - estimate) / cfg.samples)
    return McEstimate(estimate=estimate, samples=cfg.samples, std_error=std_error)

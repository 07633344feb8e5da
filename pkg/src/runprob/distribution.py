"""Exact distribution of the length of the longest success run.

The pmf falls out of the tail probabilities: P(longest == k) is the
difference of consecutive tails, with the conventions that a run of length
>= 0 always exists (tail at 0 is 1) and a run longer than the sequence never
does (tail past n is 0).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .methods import TrialSpec, recurrence

__all__ = ["RunDistribution", "longest_run_distribution"]


@dataclass(frozen=True)
class RunDistribution:
    """Exact pmf of the longest success run over support {0, ..., n}."""

    spec: TrialSpec
    pmf: tuple[Fraction, ...]

    @property
    def n(self) -> int:
        return self.spec.n

    def cdf(self, k: int) -> Fraction:
        """P(longest run <= k)."""
        if k < 0:
            return Fraction(0)
        return sum(self.pmf[: k + 1], Fraction(0))

    def tail(self, r: int) -> Fraction:
        """P(longest run >= r); 1 for r <= 0, 0 past the support."""
        if r <= 0:
            return Fraction(1)
        return sum(self.pmf[r:], Fraction(0))

    def expectation(self) -> Fraction:
        """E[longest run], cross-checked against the sum-of-tails identity."""
        mean = sum((k * w for k, w in enumerate(self.pmf)), Fraction(0))
        by_tails = sum((self.tail(r) for r in range(1, self.n + 1)), Fraction(0))
        assert mean == by_tails, f"expectation mismatch: {mean} != {by_tails}"
        return mean

    def quantile(self, alpha: Fraction | float | int) -> int:
        """Smallest k with P(longest run <= k) >= alpha, compared exactly."""
        if not 0 <= alpha <= 1:
            raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
        acc = Fraction(0)
        for k, w in enumerate(self.pmf):
            acc += w
            if acc >= alpha:
                return k
        return self.n


def longest_run_distribution(spec: TrialSpec) -> RunDistribution:
    """Exact pmf of the longest run via n recurrence sweeps.

    pmf[k] = tail(k) - tail(k+1) with tail(0) = 1 and tail(r > n) = 0.
    Independent sweeps keep memory at O(n) for the price of O(n^2) time,
    fine up to n around 10^4. Requires an exact (Fraction) spec.
    """
    if not spec.exact:
        raise ValueError("longest_run_distribution requires an exact (Fraction) p")
    n = spec.n
    tails = [Fraction(1)] + [recurrence(spec, r) for r in range(1, n + 1)] + [Fraction(0)]
    pmf = tuple(tails[k] - tails[k + 1] for k in range(n + 1))
    return RunDistribution(spec=spec, pmf=pmf)

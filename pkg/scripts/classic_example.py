#!/usr/bin/env python3
"""The classic ten-flips-of-a-fair-coin example, computed every way we know.

Prints the tail probabilities y(10, r) for r = 1..10 by all applicable
methods, the exact distribution of the longest run, and its expectation.
The r = 3 row is the famous Doctrine of Chances value 65/128.
"""

from fractions import Fraction

from runprob import (
    RunQuery,
    TrialSpec,
    crosscheck,
    decimal_str,
    format_rational,
    longest_run_distribution,
)


def main() -> None:
    spec = TrialSpec(n=10, p=Fraction(1, 2))

    print("P(run of length >= r in 10 fair coin flips)")
    print(f"{'r':>2}  {'exact':>10}  {'decimal':>12}  methods agreeing")
    for r in range(1, 11):
        report = crosscheck(RunQuery(spec=spec, r=r))
        value = report.values["recurrence"]
        names = ",".join(sorted(report.values))
        assert report.agree, f"disagreement at r={r}: {report.values}"
        print(f"{r:>2}  {format_rational(value):>10}  {decimal_str(value):>12}  {names}")

    dist = longest_run_distribution(spec)
    print("\ndistribution of the longest run")
    for k, w in enumerate(dist.pmf):
        bar = "#" * round(float(w) * 80)
        print(f"k={k:>2}  {format_rational(w):>9}  {decimal_str(w, 6):>11}  {bar}")
    mean = dist.expectation()
    print(f"\nE[longest run] = {format_rational(mean)} = {decimal_str(mean)}")
    print(f"median (alpha=1/2) = {dist.quantile(Fraction(1, 2))}")


if __name__ == "__main__":
    main()

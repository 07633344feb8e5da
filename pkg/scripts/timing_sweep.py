#!/usr/bin/env python3
"""Wall-time sweep of the three analytic methods as n grows.

Emits CSV (n, r, method, median_ns) for exact mode at p = 1/2 with r = n/2,
the regime where all three methods apply. Useful for eyeballing the O(n)
recurrence against the O(1)-ish closed forms.
"""

import argparse
import statistics
import time
from fractions import Fraction

from runprob import TrialSpec, corollary, recurrence, uspensky


def median_ns(fn, spec, r, reps):
    laps = []
    for _ in range(reps):
        start = time.perf_counter_ns()
        fn(spec, r)
        laps.append(time.perf_counter_ns() - start)
    return int(statistics.median(laps))


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n-list", default="100,1000,10000,100000",
                        help="comma-separated n values")
    parser.add_argument("--reps", type=int, default=3)
    args = parser.parse_args()

    print("n,r,method,median_ns")
    for n in (int(tok) for tok in args.n_list.split(",")):
        spec = TrialSpec(n=n, p=Fraction(1, 2))
        r = max(1, n // 2)
        values = {}
        for name, fn in [("recurrence", recurrence), ("uspensky", uspensky), ("corollary", corollary)]:
            values[name] = fn(spec, r)
            print(f"{n},{r},{name},{median_ns(fn, spec, r, args.reps)}")
        assert len(set(values.values())) == 1, f"disagreement at n={n}: {values}"


if __name__ == "__main__":
    main()

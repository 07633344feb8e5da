"""Command-line front end.

Subcommands: prob, crosscheck, table, pmf, mc, bench. Exit codes: 0 success
or agreement, 1 cross-check disagreement, 2 usage error, 3 method-domain
error. All configuration is via flags; there are no environment variables or
config files.
"""

from __future__ import annotations

import argparse
import csv
import json
import statistics
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .distribution import longest_run_distribution
from .methods import (
    FLOAT_AGREE_TOL,
    MethodDomainError,
    TrialSpec,
    RunQuery,
    compute,
    corollary,
    crosscheck,
    recurrence,
    uspensky,
)
from .oracle import BRUTE_FORCE_CAP, BruteForceCapError, McConfig, monte_carlo_prob
from .rational import decimal_str, format_rational, parse_rational

__all__ = ["main", "entry"]

CSV_HEADER = ["n", "r", "p", "method", "value_exact", "value_decimal", "elapsed_ns"]

# Largest n for which the mc subcommand derives the exact reference value.
MC_EXACT_CAP = 4096


@dataclass
class OutputRecord:
    """One computed value as it appears on the wire (CSV row or JSON object)."""

    n: int
    r: int
    p: str
    method: str
    value_exact: str | None
    value_decimal: str
    elapsed_ns: int | None

    def csv_row(self, with_timing: bool) -> list:
        return [
            self.n,
            self.r,
            self.p,
            self.method,
            self.value_exact if self.value_exact is not None else "",
            self.value_decimal,
            self.elapsed_ns if (with_timing and self.elapsed_ns is not None) else "",
        ]

    def json_obj(self, with_timing: bool) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "p": self.p,
            "method": self.method,
            "value_exact": self.value_exact,
            "value_decimal": self.value_decimal,
            "elapsed_ns": self.elapsed_ns if with_timing else None,
        }

    def plain(self, with_timing: bool) -> str:
        parts = [f"n={self.n}", f"r={self.r}", f"p={self.p}", f"method={self.method}"]
        if self.value_exact is not None:
            parts.append(f"exact={self.value_exact}")
        parts.append(f"decimal={self.value_decimal}")
        if with_timing and self.elapsed_ns is not None:
            parts.append(f"elapsed_ns={self.elapsed_ns}")
        return " ".join(parts)


def _parse_p(text: str, mode: str) -> Fraction | float:
    value = parse_rational(text)
    return value if mode == "exact" else float(value)


def _render_value(value, digits: int) -> tuple[str | None, str]:
    if isinstance(value, Fraction):
        return format_rational(value), decimal_str(value, digits)
    return None, f"{value:.{digits}g}"


def _parse_range(text: str) -> range:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise ValueError(f"range must look like A..B, got {text!r}")
    start, stop = int(lo), int(hi)
    if start > stop:
        raise ValueError(f"empty range {text!r}")
    return range(start, stop + 1)


def _emit_records(records: list[OutputRecord], args, as_array: bool = False) -> None:
    with_timing = not args.no_timing
    if args.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for rec in records:
            writer.writerow(rec.csv_row(with_timing))
    elif args.format == "json":
        objs = [rec.json_obj(with_timing) for rec in records]
        payload = objs if as_array else objs[0]
        print(json.dumps(payload, indent=2))
    else:
        for rec in records:
            print(rec.plain(with_timing))


def _timed_record(spec: TrialSpec, r: int, method: str, p_text: str, args) -> OutputRecord:
    query = RunQuery(spec=spec, r=r, method=method)
    start = time.perf_counter_ns()
    value = compute(query)
    elapsed = time.perf_counter_ns() - start
    exact, decimal = _render_value(value, args.digits)
    return OutputRecord(
        n=spec.n, r=r, p=p_text, method=method,
        value_exact=exact, value_decimal=decimal, elapsed_ns=elapsed,
    )


def _cmd_prob(args) -> int:
    spec = TrialSpec(n=args.n, p=_parse_p(args.p, args.mode))
    _emit_records([_timed_record(spec, args.r, args.method, args.p, args)], args)
    return 0


def _cmd_crosscheck(args) -> int:
    spec = TrialSpec(n=args.n, p=_parse_p(args.p, args.mode))
    report = crosscheck(RunQuery(spec=spec, r=args.r), tol=args.tol, brute_cap=args.brute_cap)
    records = []
    for name, value in report.values.items():
        exact, decimal = _render_value(value, args.digits)
        records.append(
            OutputRecord(
                n=args.n, r=args.r, p=args.p, method=name,
                value_exact=exact, value_decimal=decimal,
                elapsed_ns=report.timings[name],
            )
        )
    with_timing = not args.no_timing
    if args.format == "json":
        payload = {
            "agree": report.agree,
            "max_discrepancy": report.max_discrepancy,
            "records": [rec.json_obj(with_timing) for rec in records],
        }
        print(json.dumps(payload, indent=2))
    elif args.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for rec in records:
            writer.writerow(rec.csv_row(with_timing))
    else:
        for rec in records:
            print(rec.plain(with_timing))
        print(f"agree={'yes' if report.agree else 'NO'}")
        if report.max_discrepancy is not None:
            print(f"max_discrepancy={report.max_discrepancy:.3e}")
    return 0 if report.agree else 1


def _cmd_table(args) -> int:
    n_range = _parse_range(args.n_range)
    r_all = args.r == "all"
    r_range = None if r_all else _parse_range(args.r_range)
    p = _parse_p(args.p, args.mode)
    records = []
    for n in n_range:
        spec = TrialSpec(n=n, p=p)
        for r in (range(1, n + 1) if r_all else r_range):
            records.append(_timed_record(spec, r, "auto", args.p, args))
    _emit_records(records, args, as_array=True)
    return 0


def _cmd_pmf(args) -> int:
    # the pmf is exact by construction, so p is parsed exactly whatever the mode
    spec = TrialSpec(n=args.n, p=parse_rational(args.p))
    dist = longest_run_distribution(spec)
    rows = [(k, *_render_value(w, args.digits)) for k, w in enumerate(dist.pmf)]
    mean_row = None
    if args.expectation:
        mean_row = _render_value(dist.expectation(), args.digits)
    if args.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["k", "prob_exact", "prob_decimal"])
        for k, exact, decimal in rows:
            writer.writerow([k, exact, decimal])
        if mean_row is not None:
            writer.writerow(["expectation", mean_row[0], mean_row[1]])
    elif args.format == "json":
        payload = {
            "n": args.n,
            "p": args.p,
            "pmf": [{"k": k, "prob_exact": e, "prob_decimal": d} for k, e, d in rows],
        }
        if mean_row is not None:
            payload["expectation"] = {"exact": mean_row[0], "decimal": mean_row[1]}
        print(json.dumps(payload, indent=2))
    else:
        for k, exact, decimal in rows:
            print(f"k={k} prob={exact} decimal={decimal}")
        if mean_row is not None:
            print(f"expectation={mean_row[0]} decimal={mean_row[1]}")
    return 0


def _cmd_mc(args) -> int:
    p_float = float(parse_rational(args.p))
    spec = TrialSpec(n=args.n, p=p_float)
    cfg = McConfig(samples=args.samples, seed=args.seed, chunk_size=args.chunk_size)
    est = monte_carlo_prob(spec, args.r, cfg, workers=args.workers)
    exact_val = None
    deviation = None
    if args.n <= MC_EXACT_CAP:
        exact_val = recurrence(TrialSpec(n=args.n, p=parse_rational(args.p)), args.r)
        diff = est.estimate - float(exact_val)
        if est.std_error > 0:
            deviation = diff / est.std_error
        else:
            deviation = 0.0 if diff == 0.0 else float("inf")
    fields = {
        "n": args.n,
        "r": args.r,
        "p": args.p,
        "samples": est.samples,
        "seed": args.seed,
        "chunk_size": cfg.chunk_size,
        "workers": args.workers,
        "estimate": repr(est.estimate),
        "std_error": f"{est.std_error:.6e}",
        "exact": format_rational(exact_val) if exact_val is not None else "",
        "exact_decimal": decimal_str(exact_val, args.digits) if exact_val is not None else "",
        "deviation_se": f"{deviation:.4f}" if deviation is not None else "",
    }
    if args.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(list(fields))
        writer.writerow(list(fields.values()))
    elif args.format == "json":
        print(json.dumps(fields, indent=2))
    else:
        print(" ".join(f"{key}={value}" for key, value in fields.items() if value != ""))
    return 0


def _bench_r(policy: str, n: int) -> int:
    if policy == "half":
        return max(1, n // 2)
    if policy == "sqrt":
        return max(1, int(n**0.5))
    if policy.startswith("fixed:"):
        r = int(policy.split(":", 1)[1])
        if r < 1:
            raise ValueError(f"fixed r must be >= 1, got {r}")
        return r
    raise ValueError(f"r-policy must be half, sqrt, or fixed:K, got {policy!r}")


def _cmd_bench(args) -> int:
    p = _parse_p(args.p, args.mode)
    n_list = [int(tok) for tok in args.n_list.split(",") if tok]
    if not n_list:
        raise ValueError("empty --n-list")
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["n", "r", "p", "method", "reps", "median_ns", "value_decimal"])
    all_agree = True
    for n in n_list:
        spec = TrialSpec(n=n, p=p)
        r = _bench_r(args.r_policy, n)
        plan = [("recurrence", recurrence), ("uspensky", uspensky)]
        if n <= 2 * r and r <= n:
            plan.append(("corollary", corollary))
        values = {}
        for name, fn in plan:
            laps = []
            value = None
            for _ in range(args.reps):
                start = time.perf_counter_ns()
                value = fn(spec, r)
                laps.append(time.perf_counter_ns() - start)
            values[name] = value
            _, decimal = _render_value(value, args.digits)
            writer.writerow([n, r, args.p, name, args.reps, int(statistics.median(laps)), decimal])
        vals = list(values.values())
        if isinstance(p, Fraction):
            agree = len(set(vals)) == 1
        else:
            agree = max(abs(x - y) for x in vals for y in vals) <= FLOAT_AGREE_TOL
        if not agree:
            all_agree = False
            print(f"method disagreement at n={n}, r={r}: {values}", file=sys.stderr)
    return 0 if all_agree else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=["exact", "float"], default="exact",
                        help="exact rational arithmetic or 64-bit floats")
    common.add_argument("--format", choices=["plain", "csv", "json"], default="plain")
    common.add_argument("--digits", type=int, default=10,
                        help="significant digits for decimal rendering")
    common.add_argument("--no-timing", action="store_true",
                        help="omit elapsed_ns so output is byte-stable")

    parser = argparse.ArgumentParser(
        prog="runprob",
        description="Probability of a success run of length at least r in n Bernoulli trials.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    prob = sub.add_parser("prob", parents=[common], help="single probability query")
    prob.add_argument("--n", type=int, required=True)
    prob.add_argument("--r", type=int, required=True)
    prob.add_argument("--p", required=True, help='success probability, "a/b" or decimal')
    prob.add_argument("--method", choices=["recurrence", "uspensky", "corollary", "brute", "auto"],
                      default="auto")
    prob.set_defaults(handler=_cmd_prob)

    check = sub.add_parser("crosscheck", parents=[common],
                           help="evaluate all applicable methods, exit 1 on disagreement")
    check.add_argument("--n", type=int, required=True)
    check.add_argument("--r", type=int, required=True)
    check.add_argument("--p", required=True)
    check.add_argument("--tol", type=float, default=FLOAT_AGREE_TOL,
                       help="float-mode agreement tolerance")
    check.add_argument("--brute-cap", type=int, default=BRUTE_FORCE_CAP)
    check.set_defaults(handler=_cmd_crosscheck)

    table = sub.add_parser("table", parents=[common], help="grid of queries, row-major")
    table.add_argument("--n-range", required=True, metavar="A..B")
    group = table.add_mutually_exclusive_group(required=True)
    group.add_argument("--r-range", metavar="C..D")
    group.add_argument("--r", choices=["all"], help="r from 1 to n for every n")
    table.add_argument("--p", required=True)
    table.set_defaults(handler=_cmd_table)

    pmf = sub.add_parser("pmf", parents=[common], help="exact distribution of the longest run")
    pmf.add_argument("--n", type=int, required=True)
    pmf.add_argument("--p", required=True)
    pmf.add_argument("--expectation", action="store_true", help="append E[longest run]")
    pmf.set_defaults(handler=_cmd_pmf)

    mc = sub.add_parser("mc", parents=[common], help="seeded Monte Carlo estimate")
    mc.add_argument("--n", type=int, required=True)
    mc.add_argument("--r", type=int, required=True)
    mc.add_argument("--p", required=True)
    mc.add_argument("--samples", type=int, required=True)
    mc.add_argument("--seed", type=int, required=True)
    mc.add_argument("--chunk-size", type=int, default=1 << 16)
    mc.add_argument("--workers", type=int, default=1)
    mc.set_defaults(handler=_cmd_mc)

    bench = sub.add_parser("bench", parents=[common],
                           help="median wall time per method, CSV output")
    bench.add_argument("--n-list", required=True, help="comma-separated n values")
    bench.add_argument("--r-policy", required=True, help="half, sqrt, or fixed:K")
    bench.add_argument("--p", required=True)
    bench.add_argument("--reps", type=int, default=3)
    bench.set_defaults(handler=_cmd_bench)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    # exact results at large n have numerators far past the default int->str
    # guard; lift it for rendering
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    try:
        return args.handler(args)
    except MethodDomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (BruteForceCapError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()

"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines as they
complete. Every tolerance and time budget is pinned here.
"""

import math
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

from runprob import (
    McConfig,
    TrialSpec,
    auto,
    brute_force_prob,
    corollary,
    longest_run_distribution,
    monte_carlo_prob,
    recurrence,
    uspensky,
    uspensky_float_eval,
)

HALF = Fraction(1, 2)
GOLDEN = Fraction(65, 128)
P_GRID = (HALF, Fraction(1, 3), Fraction(3, 10), Fraction(9, 10))

# documented seed for the Monte Carlo criterion
MC_SEED = 20250809


@contextmanager
def criterion(number, description):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {number} FAIL: {description}")
        raise
    elapsed = time.perf_counter() - start
    print(f"ACCEPTANCE {number} PASS: {description} ({elapsed:.2f}s)")


def test_criterion_1_golden_value():
    with criterion(1, "65/128 from recurrence, uspensky, and brute force in < 10 ms each"):
        spec = TrialSpec(n=10, p=HALF)
        for fn in (recurrence, uspensky, brute_force_prob):
            fn(spec, 3)  # warm-up outside the timed call
            start = time.perf_counter()
            value = fn(spec, 3)
            elapsed = time.perf_counter() - start
            assert value == GOLDEN, f"{fn.__name__} returned {value}"
            assert elapsed < 0.010, f"{fn.__name__} took {elapsed * 1e3:.2f} ms"


def test_criterion_2_method_equivalence_sweep():
    with criterion(2, "recurrence == uspensky bit-exactly, 1<=r<=n<=60, four p values, < 60 s"):
        start = time.perf_counter()
        cases = 0
        for p in P_GRID:
            for n in range(1, 61):
                spec = TrialSpec(n=n, p=p)
                for r in range(1, n + 1):
                    assert recurrence(spec, r) == uspensky(spec, r), (n, r, p)
                    cases += 1
        elapsed = time.perf_counter() - start
        assert cases == 7320
        assert elapsed < 60.0, f"sweep took {elapsed:.1f} s"


def test_criterion_3_corollary_sweep():
    with criterion(3, "corollary == recurrence bit-exactly, n<=100, ceil(n/2)<=r<=n, < 10 s"):
        start = time.perf_counter()
        for p in P_GRID:
            for n in range(1, 101):
                spec = TrialSpec(n=n, p=p)
                for r in range(math.ceil(n / 2), n + 1):
                    assert corollary(spec, r) == recurrence(spec, r), (n, r, p)
        elapsed = time.perf_counter() - start
        assert elapsed < 10.0, f"sweep took {elapsed:.1f} s"


def test_criterion_4_brute_force_oracle():
    with criterion(4, "brute force == recurrence bit-exactly, n<=14, p in {1/2, 1/3}, < 120 s"):
        start = time.perf_counter()
        for p in (HALF, Fraction(1, 3)):
            for n in range(1, 15):
                spec = TrialSpec(n=n, p=p)
                for r in range(1, n + 1):
                    assert brute_force_prob(spec, r) == recurrence(spec, r), (n, r, p)
        elapsed = time.perf_counter() - start
        assert elapsed < 120.0, f"sweep took {elapsed:.1f} s"


def test_criterion_5_distribution_identities():
    with criterion(5, "pmf sums to 1, tails match recurrence, expectation duality, n<=60"):
        for p in (HALF, Fraction(3, 10)):
            for n in range(0, 61):
                spec = TrialSpec(n=n, p=p)
                dist = longest_run_distribution(spec)
                assert sum(dist.pmf) == 1, (n, p)
                tail = Fraction(0)
                for r in range(n, 0, -1):
                    tail += dist.pmf[r]
                    assert tail == recurrence(spec, r), (n, r, p)
                mean = sum((k * w for k, w in enumerate(dist.pmf)), Fraction(0))
                by_tails = sum((recurrence(spec, r) for r in range(1, n + 1)), Fraction(0))
                assert mean == by_tails == dist.expectation(), (n, p)


def test_criterion_6_boundary_and_degenerate_cases():
    with criterion(6, "n=r gives p^r, r>n gives 0, p=0 gives 0, p=1 gives 1, all methods"):
        for p in (HALF, Fraction(3, 10), Fraction(9, 10)):
            for r in (1, 2, 5, 9):
                spec = TrialSpec(n=r, p=p)
                for fn in (recurrence, uspensky, corollary, auto, brute_force_prob):
                    assert fn(spec, r) == p**r, (fn.__name__, r, p)
        for n, r in [(0, 1), (3, 4), (5, 6), (10, 25)]:
            spec = TrialSpec(n=n, p=HALF)
            for fn in (recurrence, uspensky, auto, brute_force_prob):
                assert fn(spec, r) == 0, (fn.__name__, n, r)
        for n in (1, 4, 9, 16):
            zero_spec = TrialSpec(n=n, p=Fraction(0))
            one_spec = TrialSpec(n=n, p=Fraction(1))
            for r in range(1, n + 1):
                for fn in (recurrence, uspensky, auto, brute_force_prob):
                    assert fn(zero_spec, r) == 0, (fn.__name__, n, r)
                    assert fn(one_spec, r) == 1, (fn.__name__, n, r)
                if n <= 2 * r:
                    assert corollary(zero_spec, r) == 0
                    assert corollary(one_spec, r) == 1


def test_criterion_7_monte_carlo():
    with criterion(7, "1e6 samples within 4 standard errors; identical across 1/2/8 workers"):
        grid = [
            (10, 3, "0.5"),
            (20, 4, "0.3"),
            (50, 5, "0.5"),
        ]
        for n, r, p_text in grid:
            exact = float(recurrence(TrialSpec(n=n, p=Fraction(p_text)), r))
            spec = TrialSpec(n=n, p=float(p_text))
            cfg = McConfig(samples=10**6, seed=MC_SEED)
            estimates = [monte_carlo_prob(spec, r, cfg, workers=w).estimate for w in (1, 2, 8)]
            assert estimates[0] == estimates[1] == estimates[2], (n, r, p_text)
            est = monte_carlo_prob(spec, r, cfg)
            assert est.estimate == estimates[0]
            bound = 4 * math.sqrt(est.estimate * (1 - est.estimate) / 10**6)
            assert abs(est.estimate - exact) <= bound, (n, r, p_text, est.estimate, exact)


def test_criterion_8_scale():
    with criterion(8, "exact recurrence n=1e6 r=20 < 60 s; corollary n=1e6 r=5e5 < 1 s"):
        spec = TrialSpec(n=10**6, p=HALF)
        start = time.perf_counter()
        big = recurrence(spec, 20)
        rec_elapsed = time.perf_counter() - start
        assert rec_elapsed < 60.0, f"recurrence took {rec_elapsed:.1f} s"
        assert 0 <= big <= 1
        # independent float path agrees to working precision
        approx = recurrence(TrialSpec(n=10**6, p=0.5), 20)
        assert math.isclose(float(big), approx, rel_tol=1e-9)

        start = time.perf_counter()
        fast = corollary(spec, 500000)
        cor_elapsed = time.perf_counter() - start
        assert cor_elapsed < 1.0, f"corollary took {cor_elapsed:.3f} s"
        # closed-form sum is cheap at this r: floor(n/(r+1)) = 1 term pair
        assert fast == uspensky(spec, 500000)


def test_criterion_9_float_mode_fidelity():
    with criterion(9, "float results within 1e-9 relative of exact (or documented fallback), n<=200"):
        for p_text in ("0.5", "0.3"):
            p_exact = Fraction(p_text)
            p_float = float(p_text)
            for n in range(1, 201):
                exact_spec = TrialSpec(n=n, p=p_exact)
                float_spec = TrialSpec(n=n, p=p_float)
                for r in range(1, n + 1):
                    exact = float(recurrence(exact_spec, r))
                    got = recurrence(float_spec, r)
                    assert got == pytest.approx(exact, rel=1e-9), ("recurrence", n, r, p_text)
                    direct = uspensky_float_eval(float_spec, r)
                    if not direct.used_fallback:
                        assert direct.value == pytest.approx(exact, rel=1e-9), (
                            "uspensky", n, r, p_text,
                        )
                    else:
                        assert direct.value == pytest.approx(got, rel=1e-12)
                    if n <= 2 * r:
                        assert corollary(float_spec, r) == pytest.approx(exact, rel=1e-9), (
                            "corollary", n, r, p_text,
                        )

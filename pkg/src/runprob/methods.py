"""Probability that n Bernoulli trials contain a success run of length >= r.

Three independently derived computations of the same quantity:

* ``recurrence`` -- forward iteration of the order-(r+1) linear difference
  equation ``y_m = y_{m-1} + (1 - y_{m-1-r}) * q * p^r`` with initial values
  ``y_0 = ... = y_{r-1} = 0`` and ``y_r = p^r``.
* ``uspensky`` -- Uspensky's closed form (Introduction to Mathematical
  Probability, 1937): ``y = 1 - S(n) + p^r * S(n-r)`` where ``S`` is an
  alternating binomial sum.
* ``corollary`` -- the half-range closed form ``p^r + (n-r) * p^r * q``,
  valid exactly when n/2 <= r <= n (at most one run of size r can occur).

All three run in exact mode (Fraction p, bit-exact results) or float mode
(float p). ``crosscheck`` evaluates every applicable method and reports
whether they agree.
"""

from __future__ import annotations

import math
import time
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from gmpy2 import mpz

from .rational import binomial, reduced_fraction

__all__ = [
    "METHOD_NAMES",
    "FLOAT_AGREE_TOL",
    "FLOAT_FALLBACK_THRESHOLD",
    "MethodDomainError",
    "TrialSpec",
    "RunQuery",
    "MethodReport",
    "FloatEval",
    "recurrence",
    "uspensky",
    "uspensky_sum",
    "uspensky_float_eval",
    "corollary",
    "auto",
    "compute",
    "crosscheck",
]

METHOD_NAMES = ("recurrence", "uspensky", "corollary", "brute", "auto")

# Float-mode agreement tolerance (relative) for cross-checks.
FLOAT_AGREE_TOL = 1e-9

# Estimated relative rounding error above which the float-mode alternating sum
# is abandoned for the recurrence, whose increments are all nonnegative.
FLOAT_FALLBACK_THRESHOLD = 1e-12

_EPS = 2.0**-52


class MethodDomainError(ValueError):
    """A method was asked for a query outside its valid parameter range."""


@dataclass(frozen=True)
class TrialSpec:
    """n independent Bernoulli trials with success probability p.

    p is a Fraction (exact mode) or a float (float mode); ints are promoted
    to Fractions. q = 1 - p is derived, exactly so in exact mode.
    """

    n: int
    p: Fraction | float

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or isinstance(self.n, bool):
            raise TypeError(f"n must be an int, got {type(self.n).__name__}")
        if self.n < 0:
            raise ValueError(f"n must be >= 0, got {self.n}")
        p = self.p
        if isinstance(p, int) and not isinstance(p, bool):
            p = Fraction(p)
            object.__setattr__(self, "p", p)
        if isinstance(p, Fraction):
            if not 0 <= p <= 1:
                raise ValueError(f"p must lie in [0, 1], got {p}")
        elif isinstance(p, float):
            if not (math.isfinite(p) and 0.0 <= p <= 1.0):
                raise ValueError(f"p must lie in [0, 1], got {p}")
        else:
            raise TypeError(f"p must be a Fraction or float, got {type(p).__name__}")

    @property
    def exact(self) -> bool:
        return isinstance(self.p, Fraction)

    @property
    def q(self) -> Fraction | float:
        return 1 - self.p


@dataclass(frozen=True)
class RunQuery:
    """A (spec, r) query with the method used to answer it."""

    spec: TrialSpec
    r: int
    method: str = "auto"

    def __post_init__(self) -> None:
        _check_r(self.r)
        if self.method not in METHOD_NAMES:
            raise ValueError(f"method must be one of {METHOD_NAMES}, got {self.method!r}")


@dataclass
class MethodReport:
    """Result of evaluating every applicable method on one query.

    agree means bit-exact equality in exact mode, or max pairwise difference
    within the tolerance in float mode (where max_discrepancy is filled in).
    Timings are wall-clock nanoseconds per method.
    """

    query: RunQuery
    values: dict[str, Fraction | float]
    agree: bool
    max_discrepancy: float | None
    timings: dict[str, int]


@dataclass(frozen=True)
class FloatEval:
    """Float-mode evaluation with its estimated rounding error.

    used_fallback marks results recomputed through the recurrence because the
    alternating sum cancelled too heavily (err_bound past the threshold).
    """

    value: float
    used_fallback: bool
    err_bound: float


def _check_r(r: int) -> None:
    if not isinstance(r, int) or isinstance(r, bool):
        raise TypeError(f"r must be an int, got {type(r).__name__}")
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")


def _zero(spec: TrialSpec) -> Fraction | float:
    return Fraction(0) if spec.exact else 0.0


def recurrence(spec: TrialSpec, r: int) -> Fraction | float:
    """Run probability by forward iteration of the difference equation.

    Stores only the trailing r+1 states, so memory is O(r) and n can reach
    into the millions. In exact mode the iteration runs over scaled integers
    (see _recurrence_exact), one normalization at the end.
    """
    _check_r(r)
    if spec.n < r:
        return _zero(spec)
    if spec.exact:
        return _recurrence_exact(spec.n, r, spec.p)
    return _recurrence_float(spec.n, r, spec.p)


def _recurrence_exact(n: int, r: int, p: Fraction) -> Fraction:
    # Complement form over integers: with z_m = P(no run of r in m trials)
    # and Z_m = z_m * b^m for p = a/b, the difference equation becomes
    #   Z_m = b*Z_{m-1} - c*Z_{m-1-r},   c = (b-a)*a^r,
    # with Z_i = b^i for i < r and Z_r = b^r - a^r. No per-step gcd needed;
    # the answer is y_n = (b^n - Z_n) / b^n, reduced once.
    a, b = mpz(p.numerator), mpz(p.denominator)
    c = (b - a) * a**r
    z = b**r - a**r
    # Z_i enters the ring only if some later step reads it (i <= n-1-r);
    # lagged indices below r are the closed-form powers b^i instead.
    last_kept = n - 1 - r
    ring: deque = deque()
    if r <= last_kept:
        ring.append(z)
    pw = mpz(1)
    for m in range(r + 1, n + 1):
        li = m - 1 - r
        if li < r:
            lag = pw
            pw *= b
        else:
            lag = ring.popleft()
        z = b * z - c * lag
        if m <= last_kept:
            ring.append(z)
    return reduced_fraction(b**n - z, b**n)


def _recurrence_float(n: int, r: int, p: float) -> float:
    w = (1.0 - p) * p**r
    y = p**r
    last_kept = n - 1 - r
    ring: deque = deque()
    if r <= last_kept:
        ring.append(y)
    for m in range(r + 1, n + 1):
        li = m - 1 - r
        lag = ring.popleft() if li >= r else 0.0
        y = y + (1.0 - lag) * w
        if m <= last_kept:
            ring.append(y)
    return min(y, 1.0)


def uspensky_sum(spec: TrialSpec, n_eff: int, r: int) -> Fraction | float:
    """Alternating auxiliary sum of Uspensky's closed form.

    sum over l = 0 .. floor(n_eff/(r+1)) of (-1)^l C(n_eff - l*r, l) (q p^r)^l.
    Defined as 1 for negative n_eff so the closed form degrades gracefully.
    """
    _check_r(r)
    if n_eff < 0:
        return Fraction(1) if spec.exact else 1.0
    if spec.exact:
        num, den = _uspensky_sum_exact(n_eff, r, spec.p)
        return reduced_fraction(num, den)
    value, _ = _uspensky_sum_float(n_eff, r, float(spec.p))
    return value


def _uspensky_sum_exact(n_eff: int, r: int, p: Fraction) -> tuple[mpz, mpz]:
    # Accumulated over the common denominator b^((r+1)*L): returns an
    # unreduced (numerator, denominator) pair so uspensky() can combine the
    # two sums with a single reduction.
    a, b = mpz(p.numerator), mpz(p.denominator)
    c = (b - a) * a**r
    big_l = n_eff // (r + 1)
    step = b ** (r + 1)
    acc = mpz(0)
    term = step**big_l  # c^l * b^((r+1)(L-l)) at l = 0
    sign = 1
    for l in range(big_l + 1):
        acc += sign * binomial(n_eff - l * r, l) * term
        if l < big_l:
            term = term * c // step
        sign = -sign
    return acc, step**big_l


def _uspensky_sum_float(n_eff: int, r: int, p: float) -> tuple[float, float]:
    # Neumaier-compensated sum; also returns the sum of |terms| so the caller
    # can bound the relative rounding error of the cancellation.
    w = (1.0 - p) * p**r
    total = 0.0
    comp = 0.0
    abs_sum = 0.0
    sign = 1.0
    wl = 1.0
    for l in range(n_eff // (r + 1) + 1):
        term = sign * float(binomial(n_eff - l * r, l)) * wl
        abs_sum += abs(term)
        t = total + term
        if abs(total) >= abs(term):
            comp += (total - t) + term
        else:
            comp += (term - t) + total
        total = t
        wl *= w
        sign = -sign
    return total + comp, abs_sum


def uspensky(spec: TrialSpec, r: int) -> Fraction | float:
    """Run probability via the 1937 closed form 1 - S(n) + p^r S(n-r).

    Exact mode combines the two alternating sums over a power-of-b common
    denominator with one final reduction. Float mode silently falls back to
    the recurrence when cancellation would cost more than about 1e-12 of
    relative accuracy (see uspensky_float_eval).
    """
    _check_r(r)
    if spec.n < r:
        return _zero(spec)
    if spec.exact:
        return _uspensky_exact(spec.n, r, spec.p)
    return uspensky_float_eval(spec, r).value


def _uspensky_exact(n: int, r: int, p: Fraction) -> Fraction:
    a, b = mpz(p.numerator), mpz(p.denominator)
    num1, den1 = _uspensky_sum_exact(n, r, p)
    num2, den2 = _uspensky_sum_exact(n - r, r, p)
    # y = 1 - num1/den1 + a^r * num2 / (b^r * den2); both denominators are
    # powers of b, so the common denominator is whichever is larger
    full2 = b**r * den2
    if den1 >= full2:
        den = den1
        num = den1 - num1 + a**r * num2 * (den1 // full2)
    else:
        den = full2
        num = den - num1 * (den // den1) + a**r * num2
    return reduced_fraction(num, den)


def uspensky_float_eval(spec: TrialSpec, r: int) -> FloatEval:
    """Float-mode closed form together with its error diagnosis.

    The alternating sums can cancel catastrophically once floor(n/(r+1))
    grows; err_bound estimates the relative rounding error from the ratio of
    summed magnitudes to the result. Past FLOAT_FALLBACK_THRESHOLD (or on
    overflow of a binomial term) the value is recomputed with the recurrence
    and used_fallback is set.
    """
    _check_r(r)
    p = float(spec.p)
    n = spec.n
    if n < r:
        return FloatEval(0.0, False, 0.0)
    try:
        s1, abs1 = _uspensky_sum_float(n, r, p)
        s2, abs2 = _uspensky_sum_float(n - r, r, p)
        pr = p**r
        value = 1.0 - s1 + pr * s2
        magnitude = 1.0 + abs1 + pr * abs2
        err_bound = _EPS * magnitude / max(abs(value), 5e-324)
    except OverflowError:
        return FloatEval(_recurrence_float(n, r, p), True, math.inf)
    if not math.isfinite(value) or err_bound > FLOAT_FALLBACK_THRESHOLD:
        return FloatEval(_recurrence_float(n, r, p), True, err_bound)
    return FloatEval(min(max(value, 0.0), 1.0), False, err_bound)


def corollary(spec: TrialSpec, r: int) -> Fraction | float:
    """Half-range closed form p^r + (n-r) p^r q, exact when n/2 <= r <= n.

    In that range two disjoint runs of size r cannot fit, so the run either
    starts at position 1 or follows a failure at one of n-r later positions.

    Raises MethodDomainError outside the range; use recurrence or uspensky
    there.
    """
    _check_r(r)
    n = spec.n
    if 2 * r < n or r > n:
        raise MethodDomainError(
            f"corollary requires 2r >= n and r <= n (valid range n/2 <= r <= n); got n={n}, r={r}"
        )
    if spec.exact:
        a, b = mpz(spec.p.numerator), mpz(spec.p.denominator)
        return reduced_fraction(a**r * (b + (n - r) * (b - a)), b ** (r + 1))
    p = float(spec.p)
    return p**r * (1.0 + (n - r) * (1.0 - p))


def auto(spec: TrialSpec, r: int) -> Fraction | float:
    """Method dispatch: 0 for impossible runs, closed form when 2r >= n, else recurrence."""
    _check_r(r)
    if r > spec.n:
        return _zero(spec)
    if 2 * r >= spec.n:
        return corollary(spec, r)
    return recurrence(spec, r)


def compute(query: RunQuery, brute_cap: int | None = None) -> Fraction | float:
    """Evaluate a query with its selected method."""
    from .oracle import brute_force_prob

    spec, r = query.spec, query.r
    if query.method == "brute":
        if brute_cap is None:
            return brute_force_prob(spec, r)
        return brute_force_prob(spec, r, cap=brute_cap)
    fn = {"recurrence": recurrence, "uspensky": uspensky, "corollary": corollary, "auto": auto}[
        query.method
    ]
    return fn(spec, r)


def crosscheck(
    query: RunQuery,
    tol: float = FLOAT_AGREE_TOL,
    brute_cap: int | None = None,
) -> MethodReport:
    """Evaluate every method whose domain contains the query and compare.

    Recurrence and the closed-form sum always run; corollary joins when
    2r >= n and r <= n, brute force when n is at or below its cap. Exact mode
    demands bit-exact agreement; float mode allows pairwise differences up to
    tol and records the worst one. Disagreement is reported, never raised.
    """
    from .oracle import BRUTE_FORCE_CAP, brute_force_prob

    spec, r = query.spec, query.r
    cap = BRUTE_FORCE_CAP if brute_cap is None else brute_cap
    plan: list[tuple[str, object]] = [("recurrence", recurrence), ("uspensky", uspensky)]
    if 2 * r >= spec.n and r <= spec.n:
        plan.append(("corollary", corollary))
    if spec.n <= cap:
        plan.append(("brute", lambda s, rr: brute_force_prob(s, rr, cap=cap)))
    values: dict[str, Fraction | float] = {}
    timings: dict[str, int] = {}
    for name, fn in plan:
        start = time.perf_counter_ns()
        values[name] = fn(spec, r)
        timings[name] = time.perf_counter_ns() - start
    if spec.exact:
        agree = len(set(values.values())) == 1
        max_disc = None
    else:
        vals = list(values.values())
        max_disc = max(
            (abs(x - y) for i, x in enumerate(vals) for y in vals[i + 1 :]), default=0.0
        )
        agree = max_disc <= tol
    return MethodReport(query=query, values=values, agree=agree, max_discrepancy=max_disc, timings=timings)

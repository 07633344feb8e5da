"""Exact probabilities of success runs in Bernoulli trials.

Computes P(at least r consecutive successes in n trials) three independent
ways over exact rationals or floats, derives the full distribution of the
longest run, and ships enumeration / Monte Carlo oracles plus a CLI for
cross-checking them all against each other.
"""

from .rational import (
    Rational,
    binomial,
    decimal_str,
    format_rational,
    parse_rational,
    reduced_fraction,
)
from .methods import (
    FLOAT_AGREE_TOL,
    FLOAT_FALLBACK_THRESHOLD,
    METHOD_NAMES,
    FloatEval,
    MethodDomainError,
    MethodReport,
    RunQuery,
    TrialSpec,
    auto,
    compute,
    corollary,
    crosscheck,
    recurrence,
    uspensky,
    uspensky_float_eval,
    uspensky_sum,
)
from .distribution import RunDistribution, longest_run_distribution
from .oracle import (
    BRUTE_FORCE_CAP,
    BruteForceCapError,
    McConfig,
    McEstimate,
    brute_force_pmf,
    brute_force_prob,
    longest_run_of,
    monte_carlo_prob,
)

__version__ = "0.1.0"

__all__ = [
    "Rational",
    "binomial",
    "decimal_str",
    "format_rational",
    "parse_rational",
    "reduced_fraction",
    "FLOAT_AGREE_TOL",
    "FLOAT_FALLBACK_THRESHOLD",
    "METHOD_NAMES",
    "FloatEval",
    "MethodDomainError",
    "MethodReport",
    "RunQuery",
    "TrialSpec",
    "auto",
    "compute",
    "corollary",
    "crosscheck",
    "recurrence",
    "uspensky",
    "uspensky_float_eval",
    "uspensky_sum",
    "RunDistribution",
    "longest_run_distribution",
    "BRUTE_FORCE_CAP",
    "BruteForceCapError",
    "McConfig",
    "McEstimate",
    "brute_force_pmf",
    "brute_force_prob",
    "longest_run_of",
    "monte_carlo_prob",
    "__version__",
]

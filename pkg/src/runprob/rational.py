"""Exact rational arithmetic and combinatorial primitives.

Every probability in this package is a ``fractions.Fraction`` kept in lowest
terms, so equality between independently computed values is a plain ``==``.
This module adds the text conventions (``"a/b"``, ``"0"``), decimal rendering
to a requested number of significant digits, the binomial coefficient used by
the alternating-sum method, and a GMP-backed constructor for fractions whose
numerator and denominator run to hundreds of kilobits.
"""

from __future__ import annotations

import math
from decimal import Decimal, localcontext
from fractions import Fraction

import gmpy2

__all__ = [
    "Rational",
    "binomial",
    "parse_rational",
    "format_rational",
    "decimal_str",
    "reduced_fraction",
]

Rational = Fraction

# Extra decimal digits carried before the final significant-digit rounding.
_GUARD_DIGITS = 5


def binomial(n: int, k: int) -> int:
    """Exact binomial coefficient, 0 whenever k < 0 or k > n.

    Returning 0 out of range lets summation loops run without edge guards.
    """
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def parse_rational(text: str) -> Fraction:
    """Parse ``"a/b"``, an integer, or a decimal string into a Fraction.

    Decimal strings convert exactly ("0.3" becomes 3/10), so feeding decimals
    into exact mode never loses precision.
    """
    return Fraction(text.strip())


def format_rational(x: Fraction) -> str:
    """Canonical text form: ``"a/b"`` in lowest terms, ``"1/1"`` for one, ``"0"`` for zero."""
    if x == 0:
        return "0"
    return f"{x.numerator}/{x.denominator}"


def decimal_str(x: Fraction, digits: int = 10) -> str:
    """Decimal approximation of ``x`` to ``digits`` significant digits.

    Works on fractions of any size and magnitude: the value is pre-scaled
    with integer arithmetic, so million-bit numerators never pass through a
    full base-10 conversion.

    >>> decimal_str(Fraction(65, 128))
    '0.5078125'
    """
    if digits < 1:
        raise ValueError(f"digits must be >= 1, got {digits}")
    if x == 0:
        return "0"
    num, den = abs(x.numerator), x.denominator

    def at_least_pow10(k: int) -> bool:
        return num >= den * 10**k if k >= 0 else num * 10**-k >= den

    # exact decimal exponent: 10^e <= num/den < 10^(e+1)
    e = (num.bit_length() - den.bit_length()) * 30103 // 100000
    while not at_least_pow10(e):
        e -= 1
    while at_least_pow10(e + 1):
        e += 1
    # scale to digits + guard significant digits, rounding half up at the
    # last guard digit; the guard makes the final rounding correct except
    # for half-way values that differ only beyond it
    shift = digits + _GUARD_DIGITS - 1 - e
    if shift >= 0:
        scaled = (2 * num * 10**shift + den) // (2 * den)
    else:
        wide = den * 10**-shift
        scaled = (2 * num + wide) // (2 * wide)
    with localcontext() as ctx:
        ctx.prec = digits
        d = +Decimal(scaled).scaleb(-shift)
    with localcontext() as ctx:
        ctx.prec = digits + 10
        d = d.quantize(Decimal(1)) if d == d.to_integral_value() else d.normalize()
    sign = "-" if x < 0 else ""
    return sign + str(d)


def _probe_fast_fraction() -> bool:
    try:
        f = object.__new__(Fraction)
        f._numerator = 3
        f._denominator = 4
        return f == Fraction(3, 4) and f + f == Fraction(3, 2) and hash(f) == hash(Fraction(3, 4))
    except Exception:
        return False


# Fraction(num, den) always re-runs CPython's gcd, which costs over a second on
# million-bit coprime pairs; filling the slots directly after a GMP reduction
# skips that. Probed once so an interpreter with different Fraction internals
# silently falls back to the public constructor.
_FAST_FRACTION = _probe_fast_fraction()


def reduced_fraction(num, den) -> Fraction:
    """Fraction from an integer ratio, reduced with GMP.

    Accepts plain ints or gmpy2.mpz; den must be nonzero. Orders of magnitude
    faster than ``Fraction(num, den)`` once operands reach ~10^5 bits.
    """
    if den == 0:
        raise ZeroDivisionError("reduced_fraction(_, 0)")
    if den < 0:
        num, den = -num, -den
    g = gmpy2.gcd(num, den)
    num, den = int(num // g), int(den // g)
    if _FAST_FRACTION:
        f = object.__new__(Fraction)
        f._numerator = num
        f._denominator = den
        return f
    return Fraction(num, den)

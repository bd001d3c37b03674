"""Exact rational helpers built on fractions.Fraction.

Fraction already guarantees the invariants we need (reduced form, positive
denominator, arbitrary precision), so this module only adds the pieces the
rest of the package leans on: fast exact summation over a common denominator,
and the "p/q" string serialization used by every CSV/JSON surface.
"""

from fractions import Fraction
from math import lcm

Rational = Fraction


def exact_sum(terms) -> Fraction:
    """Exact sum of Fractions via a single common denominator.

    Summing n Fractions pairwise costs a gcd per step on ever-growing
    denominators; for dense sums like sum 1/d^3 over d <= 1e4 that is minutes.
    Accumulating integer numerators over lcm(denominators) and reducing once
    is linear in the bignum size.
    """
    pairs = [(int(t.numerator), int(t.denominator)) for t in terms]
    if not pairs:
        return Fraction(0)
    den = 1
    for _, d in pairs:
        den = lcm(den, d)
    total = 0
    for n, d in pairs:
        total += n * (den // d)
    return Fraction(total, den)


def exact_dot(fracs, ints) -> Fraction:
    """Exact sum of f_i * k_i with f_i Fraction and k_i int."""
    return exact_sum(f * k for f, k in zip(fracs, ints) if k)


def format_rational(v) -> str:
    """Serialize ints and Fractions; integral values drop the denominator."""
    if isinstance(v, Fraction):
        if v.denominator == 1:
            return str(v.numerator)
        return f"{v.numerator}/{v.denominator}"
    return str(v)


def parse_rational(s) -> Fraction:
    """Parse "p/q" or plain integer strings (Fraction accepts both)."""
    return Fraction(str(s))

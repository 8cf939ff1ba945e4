"""Exact scalar arithmetic: Bernoulli numbers, divisor sums, gcds, rational I/O.

Integers are Python ints and rationals are :class:`fractions.Fraction`, so
nothing here overflows or rounds.
"""

from fractions import Fraction
from functools import lru_cache
from math import comb, gcd, isqrt
from numbers import Integral

from sympy import isprime

__all__ = [
    "bernoulli",
    "sigma",
    "gcd_vec",
    "divisors",
    "is_prime",
    "as_rational",
    "fmt_rat",
    "parse_rat",
]


@lru_cache(maxsize=None)
def _bernoulli_table(k):
    # B_0..B_k from sum_{j=0}^{m} binom(m+1, j) B_j = 0, which gives B_1 = -1/2
    table = [Fraction(1)]
    for m in range(1, k + 1):
        acc = sum(comb(m + 1, j) * table[j] for j in range(m))
        table.append(-acc / (m + 1))
    return tuple(table)


def bernoulli(k):
    """Return the Bernoulli number ``B_k`` for even ``k >= 0``.

    The convention has ``B_1 = -1/2``; only even indices are exposed, and
    for those ``-2k / B_k`` is the first coefficient of the normalized
    elliptic Eisenstein series (240 for ``k = 4``).
    """
    if not isinstance(k, int) or k < 0 or k % 2:
        raise ValueError(f"bernoulli: need an even integer k >= 0, got {k!r}")
    return _bernoulli_table(k)[k]


def as_rational(x):
    """Coerce an int/Fraction/numpy integer to an int when integral, else a Fraction."""
    if isinstance(x, Integral):
        return int(x)
    x = Fraction(x)
    return int(x.numerator) if x.denominator == 1 else x


@lru_cache(maxsize=1 << 16)
def divisors(x):
    """Sorted positive divisors of a positive integer."""
    if x <= 0:
        raise ValueError("divisors: need a positive integer")
    small, large = [], []
    for d in range(1, isqrt(x) + 1):
        if x % d == 0:
            small.append(d)
            if d * d != x:
                large.append(x // d)
    return tuple(small + large[::-1])


@lru_cache(maxsize=1 << 16)
def _sigma_int(m, x):
    return sum(d ** m for d in divisors(x))


def sigma(m, x):
    """Divisor power sum ``sum_{d | x} d**m``.

    Returns 0 unless ``x`` is a positive integer; non-integral rationals and
    zero are dropped rather than rejected, matching how divisor sums over
    ``x / d**2`` terms are used by the Maass relations.
    """
    x = Fraction(x)
    if x.denominator != 1 or x <= 0:
        return 0
    return _sigma_int(m, x.numerator)


def gcd_vec(v):
    """Nonnegative gcd of an integer vector; the zero vector gives 0."""
    g = 0
    for a in v:
        a = Fraction(a)
        if a.denominator != 1:
            raise ValueError(f"gcd_vec: non-integral entry {a}")
        g = gcd(g, a.numerator)
    return g


def is_prime(q):
    return isinstance(q, int) and q > 1 and bool(isprime(q))


def fmt_rat(x):
    """Serialize a rational as ``"p/q"``, or ``"p"`` when ``q == 1``."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rat(s):
    """Inverse of :func:`fmt_rat`; returns an int when the value is integral."""
    return as_rational(Fraction(s))

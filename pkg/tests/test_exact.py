from fractions import Fraction
from math import comb, gcd

import pytest
from hypothesis import given, strategies as st

from orthomf.exact import (as_rational, bernoulli, divisors, fmt_rat, gcd_vec, is_prime,
                           parse_rat, sigma)


def bernoulli_by_recurrence(k):
    B = [Fraction(1)]
    for m in range(1, k + 1):
        B.append(-sum(comb(m + 1, j) * B[j] for j in range(m)) / (m + 1))
    return B[k]


def test_bernoulli_examples():
    assert bernoulli(0) == 1
    assert bernoulli(4) == Fraction(-1, 30)
    assert bernoulli(8) == Fraction(-1, 30)


@pytest.mark.parametrize("k", range(0, 41, 2))
def test_bernoulli_recurrence(k):
    assert bernoulli(k) == bernoulli_by_recurrence(k)


@pytest.mark.parametrize("k, value", [(4, 240), (6, -504), (8, 480), (10, -264),
                                      (12, Fraction(65520, 691)), (14, -24)])
def test_eisenstein_normalization(k, value):
    assert Fraction(-2 * k) / bernoulli_by_recurrence(k) == value
    assert Fraction(-2 * k) / bernoulli(k) == value


@pytest.mark.parametrize("k", [-2, 3, 7])
def test_bernoulli_rejects(k):
    with pytest.raises(ValueError):
        bernoulli(k)


def test_sigma_examples():
    assert sigma(3, 1) == 1
    assert sigma(3, 2) == 9
    assert sigma(3, Fraction(1, 2)) == 0
    assert sigma(3, 0) == 0
    assert sigma(5, -4) == 0
    assert sigma(0, 12) == 6


@given(st.integers(1, 10 ** 4), st.integers(1, 10 ** 4), st.integers(0, 6))
def test_sigma_multiplicative(a, b, m):
    if gcd(a, b) == 1:
        assert sigma(m, a * b) == sigma(m, a) * sigma(m, b)


@given(st.integers(1, 5000))
def test_divisors_brute_force(x):
    assert list(divisors(x)) == [d for d in range(1, x + 1) if x % d == 0]


def test_gcd_vec():
    assert gcd_vec((4, 6, 10)) == 2
    assert gcd_vec((0, 0, 0)) == 0
    assert gcd_vec((1, 0, 5)) == 1
    assert gcd_vec((-4, 6)) == 2


def test_is_prime():
    assert [p for p in range(30) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


@given(st.fractions())
def test_rational_string_round_trip(x):
    s = fmt_rat(x)
    assert parse_rat(s) == x
    if x.denominator == 1:
        assert "/" not in s


def test_as_rational_normalizes():
    assert as_rational(Fraction(4, 2)) == 2 and isinstance(as_rational(Fraction(4, 2)), int)
    assert as_rational(Fraction(1, 2)) == Fraction(1, 2)

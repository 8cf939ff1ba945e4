"""Elliptic Eisenstein series and the orthogonal Eisenstein series ``F_{k,S}``.

For ``det S = 1`` and even ``k`` with ``k = n/2`` or ``k > n/2 + 2`` the
series ``F_{k,S}`` is the Maass-space form whose star image is
``-(2k/B_k) E_{k-n/2}``.  Its coefficients have the closed form

    1                                             lam = 0
    -(2k/B_k) sigma_{k-1}(eps)                    lam != 0 isotropic
    c_k sum_{d | eps} d^(k-1) sigma_{k-1-n/2}(N / (2 d^2))   N = S0[lam] > 0, k > n/2
    0                                             N > 0, k = n/2

with ``c_k = 2k(2k - n) / (B_k B_{k-n/2})``.  The ``variant="printed"``
option replaces ``N / (2 d^2)`` by ``N / (2 d)``; it exists only so the
test-suite can show that this reading breaks the Maass relations.
"""

from fractions import Fraction

from .exact import as_rational, bernoulli, divisors, sigma
from .fourier import EllSeries, FourierSeries, maass_extend
from .quadform import eps, in_cone, isotropic_pairs, norm

__all__ = [
    "ell_eisenstein",
    "ell_delta",
    "F_coefficient",
    "F_series",
    "remark3d_check",
]


def ell_eisenstein(kappa, N):
    """``E_kappa = 1 - (2 kappa / B_kappa) sum sigma_{kappa-1}(n) q^n`` up to ``q^N``.

    ``kappa = 0`` gives the constant 1.
    """
    if not isinstance(kappa, int) or kappa % 2 or kappa < 0:
        raise ValueError(f"weight must be an even integer >= 0, got {kappa!r}")
    if kappa == 2:
        raise ValueError("weight 2 Eisenstein series is not modular")
    if kappa == 0:
        return EllSeries(0, [1] + [0] * N)
    c = Fraction(-2 * kappa) / bernoulli(kappa)
    return EllSeries(kappa, [1] + [c * sigma(kappa - 1, n) for n in range(1, N + 1)])


def ell_delta(N):
    """``Delta = (E4^3 - E6^2) / 1728`` up to ``q^N``."""
    e4, e6 = ell_eisenstein(4, N), ell_eisenstein(6, N)
    d = (e4 * e4 * e4 - e6 * e6).scale(Fraction(1, 1728))
    return EllSeries(12, d.coeffs)


def _check_weight(sp, k):
    if not sp.unimodular:
        raise ValueError("F_{k,S} is only available for det S = 1")
    n = sp.n
    if k % 2 or not (2 * k == n or 2 * k > n + 4):
        raise ValueError(f"need even k with k = n/2 or k > n/2 + 2 (n = {n}), got k = {k}")


def F_coefficient(sp, k, lam, variant="d2"):
    """Closed-form coefficient of ``F_{k,S}`` at ``lam``."""
    if variant not in ("d2", "printed"):
        raise ValueError("variant must be 'd2' or 'printed'")
    n = sp.n
    if not any(lam):
        return 1
    if not in_cone(sp, lam):
        return 0
    N = norm(sp, lam)
    e = eps(sp, lam)
    Bk = bernoulli(k)
    if N == 0:
        return as_rational(Fraction(-2 * k) / Bk * sigma(k - 1, e))
    if 2 * k == n:
        return 0
    ck = Fraction(2 * k * (2 * k - n)) / (Bk * bernoulli(k - n // 2))
    if variant == "d2":
        s = sum(d ** (k - 1) * sigma(k - 1 - n // 2, Fraction(N, 2 * d * d)) for d in divisors(e))
    else:
        s = sum(d ** (k - 1) * sigma(k - 1 - n // 2, Fraction(N, 2 * d)) for d in divisors(e))
    return as_rational(ck * s)


def F_series(sp, k, B, variant="d2", check=True):
    """``F_{k,S}`` on the window ``m, l <= B`` from the closed form.

    With ``check`` the result is compared against the Maass lift of
    ``-(2k/B_k) E_{k-n/2}``; any disagreement raises ``AssertionError``.
    """
    _check_weight(sp, k)
    f = FourierSeries.from_function(sp, k, B, lambda lam: F_coefficient(sp, k, lam, variant),
                                    invariant=True)
    if check and variant == "d2":
        c = ell_eisenstein(k - sp.n // 2, B * B).scale(Fraction(-2 * k) / bernoulli(k))
        g = maass_extend(sp, k, c, B)
        if f != g:
            raise AssertionError("closed form and Maass lift of F_{k,S} disagree at "
                                 f"{f.differences(g)[:3]}")
    return f


def remark3d_check(sp, lam):
    """``(2 sigma_3(N/2), sum sigma_3(eps(nu)) sigma_3(eps(rho)))`` over isotropic splittings.

    ``N = S0[lam]`` must be positive; the sum runs over ordered pairs of
    nonzero isotropic cone indices ``nu + rho = lam``.
    """
    if sp.n != 8 or not sp.unimodular:
        raise ValueError("the divisor-sum identity is stated for n = 8, det S = 1")
    N = norm(sp, lam)
    if not in_cone(sp, lam) or N <= 0:
        raise ValueError(f"{tuple(lam)} must be a cone index of positive norm")
    lhs = 2 * sigma(3, Fraction(N, 2))
    rhs = sum(sigma(3, eps(sp, nu)) * sigma(3, eps(sp, rho)) for nu, rho in isotropic_pairs(sp, lam))
    return lhs, rhs

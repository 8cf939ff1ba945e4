from fractions import Fraction
from functools import lru_cache

import pytest

from orthomf.eisenstein import F_series, ell_delta, ell_eisenstein
from orthomf.fourier import EllSeries, maass_extend
from orthomf.quadform import load_gram


@lru_cache(maxsize=None)
def space(name):
    return load_gram(name)


@lru_cache(maxsize=None)
def F(k, B, name="e8"):
    return F_series(space(name), k, B)


def modular_basis(weight, N):
    """A basis of elliptic modular forms of the given weight, as products of E4, E6, Delta."""
    E4, E6, D = ell_eisenstein(4, N), ell_eisenstein(6, N), ell_delta(N)
    out = []
    for c in range(weight // 12 + 1):
        rest = weight - 12 * c
        for b in range(rest // 6 + 1):
            if (rest - 6 * b) % 4 == 0:
                a = (rest - 6 * b) // 4
                g = EllSeries(0, [1] + [0] * N)
                for factor, e in ((E4, a), (E6, b), (D, c)):
                    for _ in range(e):
                        g = g * factor
                out.append(EllSeries(weight, g.coeffs))
                break
    return out


def random_maass(k, B, coeffs, name="e8"):
    """Maass-space series on E8 with star image ``sum coeffs[i] * basis[i]`` of weight k - 4."""
    sp = space(name)
    N = B * B
    basis = modular_basis(k - sp.n // 2, N)
    c = EllSeries(k - sp.n // 2, [0] * (N + 1))
    for a, g in zip(coeffs, basis):
        c = c + g.scale(Fraction(a))
    return maass_extend(sp, k, c, B)


@pytest.fixture(scope="session")
def e8():
    return space("e8")


@pytest.fixture(scope="session")
def n2det7():
    return space("n2det7")


@pytest.fixture(scope="session")
def a2():
    return space("a2")


@pytest.fixture(scope="session")
def d4():
    return space("d4")

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from sympy.polys.domains import QQ_I

from orthomf.orthogroup import (GElem, SingularCocycle, act, base_point, block_k_hat,
                                block_k_mu, block_k_tilde_mu, embed_down, embed_up, exact_det,
                                in_discriminant_kernel, in_SO_plus, is_similitude, k_hat, k_mu,
                                k_tilde_mu, random_point, random_word, rank_mod, rotation,
                                translation)

J = [[0, -1], [1, 0]]
T = [[1, 1], [0, 1]]


def compose(word):
    M = word[0]
    for g in word[1:]:
        M = M @ g
    return M


@pytest.mark.parametrize("name", ["e8", "n2det7", "a2"])
def test_generators_are_integral_similitudes(name):
    from conftest import space
    sp = space(name)
    n = sp.n
    mu = [1] + [0] * (n - 1)
    gens = [embed_down(J, n), embed_up(J, n), embed_down(T, n), embed_up(T, n),
            translation(sp, [1] * (n + 2)), translation(sp, [1] * (n + 2), lower=True),
            k_mu(sp, mu), k_tilde_mu(sp, mu)]
    for g in gens:
        assert is_similitude(sp, g, 1)
        assert in_SO_plus(sp, g)
        assert in_discriminant_kernel(sp, g)
    assert is_similitude(sp, k_hat(sp), 1)
    assert exact_det(k_hat(sp).mat) == -1
    assert not in_SO_plus(sp, k_hat(sp))


def test_translation_law(e8):
    rng = np.random.default_rng(1)
    for _ in range(5):
        lam = [int(x) for x in rng.integers(-3, 4, 10)]
        nu = [int(x) for x in rng.integers(-3, 4, 10)]
        assert translation(e8, lam) @ translation(e8, nu) == \
            translation(e8, [a + b for a, b in zip(lam, nu)])


def test_k_tilde_is_conjugate(e8):
    rng = np.random.default_rng(2)
    Kh = block_k_hat(8)
    for _ in range(5):
        mu = [int(x) for x in rng.integers(-2, 3, 8)]
        assert (block_k_tilde_mu(e8.S, mu) == Kh @ block_k_mu(e8.S, mu) @ Kh).all()


def test_translation_acts_by_shift(e8):
    w = random_point(e8, np.random.default_rng(3))
    lam = np.arange(10) - 4
    image, j = act(e8, translation(e8, lam), w)
    assert np.allclose(image, w + lam) and j == 1


def test_exact_action_matches_float(e8):
    w = base_point(8)
    word = [embed_down(J, 8), translation(e8, [1] + [0] * 9), k_mu(e8, [1] + [0] * 7)]
    M = compose(word)
    exact, j = act(e8, M, w)
    wf = np.array([complex(float(x.x), float(x.y)) for x in w])
    approx, jf = act(e8, M, wf)
    got = np.array([complex(float(QQ_I.to_sympy(x).as_real_imag()[0]),
                            float(QQ_I.to_sympy(x).as_real_imag()[1])) for x in exact])
    assert np.allclose(got, approx)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_action_and_cocycle_composition(seed):
    from conftest import space
    sp = space("e8")
    rng = np.random.default_rng(seed)
    w = random_point(sp, rng)
    word = random_word(sp, rng)
    z, j = w, 1
    for g in reversed(word):
        z, jj = act(sp, g, z)
        j *= jj
    image, jm = act(sp, compose(word), w)
    assert np.allclose(image, z, rtol=1e-10, atol=1e-10)
    assert abs(jm - j) <= 1e-10 * max(1, abs(j))


def test_inverse(e8):
    M = compose([embed_up(T, 8), translation(e8, [2] + [0] * 8 + [1]), k_hat(e8)])
    prod = M @ M.inverse(e8)
    assert (prod.mat == np.eye(12, dtype=int)).all() and prod.scale == 1


def test_rank_mod():
    assert rank_mod(np.diag([1, 2, 2, 4]), 2) == 1
    assert rank_mod(np.diag([1, 1, 2, 4]), 2) == 2
    assert rank_mod(np.zeros((3, 3), dtype=int), 5) == 0


def test_singular_cocycle(e8):
    # J embedded below sends tau -> -1/tau, singular at tau = 0
    w = np.zeros(10, dtype=complex)
    with pytest.raises(SingularCocycle):
        act(e8, embed_down(J, 8), w)


def test_gelem_json_round_trip(e8):
    M = GElem(np.diag([1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 4]), 4)
    assert GElem.from_json(M.to_json()) == M


def test_rotation_rejects_non_isometry(e8):
    with pytest.raises(ValueError):
        rotation(e8, 2 * np.eye(10, dtype=int))

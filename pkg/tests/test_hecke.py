from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import F, random_maass, space
from orthomf.eisenstein import ell_eisenstein
from orthomf.exact import sigma
from orthomf.fourier import FourierSeries, OutOfRange, eval_numeric, maass_defect
from orthomf.hecke import (_same_coset, _translations, apply_Tp_down, apply_Tp_up, apply_TSq,
                           coset_reps, counts, ell_hecke, hecke_coefficient, rho,
                           row_lattice_key, slash_sum_numeric, star_relation_check,
                           Tp_matrices, validate_reps)
from orthomf.orthogroup import random_point, rank_mod
from orthomf.quadform import count_congruence, enumerate_cone, eps

Z8 = (0,) * 8


def isotropic_lines(sp, q):
    """Independent count of isotropic lines of ``S1`` over ``Z/qZ`` by brute force."""
    S1 = np.asarray(sp.S1, dtype=np.int64)
    size = len(S1)
    grid = np.array(list(product(range(q), repeat=size)), dtype=np.int64)[1:]
    half = np.einsum("ij,jk,ik->i", grid, S1, grid) // 2
    return int((half % q == 0).sum()) // (q - 1)


def random_finite(sp, k, seed, B=1):
    rng = np.random.default_rng(seed)
    return FourierSeries.from_mapping(sp, k, B, {lam: int(rng.integers(-3, 4))
                                                 for lam in enumerate_cone(sp, B)}, finite=True)


# -- counts ------------------------------------------------------------------

@pytest.mark.parametrize("name,q,expect", [
    ("e8", 2, {"N_a": 1024, "N_b": 1, "N_c": 512, "N_d": 2, "N_e": 270, "N_f": 270,
               "N": 1054, "rho0": 2079}),
    ("e8", 3, {"N_c": 19683, "N_d": 3, "N_e": 6720, "N_f": 3360, "N": 29766, "rho0": 88816}),
    ("n2det7", 2, {"N": 18, "rho0": 35}),
    ("n2det7", 3, {"rho0": 112}),
    ("n2det7", 5, {"rho0": 756}),
    ("a2", 2, {"rho0": 27}),
    ("a2", 5, {"rho0": 756}),
])
def test_counts(name, q, expect):
    c = counts(space(name), q)
    for key, v in expect.items():
        assert c[key] == v, key
    assert c["rho0"] == 1 + q ** (space(name).n + 2) + c["N"]


@pytest.mark.parametrize("name,q", [("n2det7", 2), ("n2det7", 3), ("n2det7", 5), ("a2", 2),
                                    ("a2", 5), ("d4", 3), ("d4", 5), ("e8", 2)])
def test_rho0_counts_isotropic_lines(name, q):
    sp = space(name)
    if len(sp.S1) > 10 and q > 2:
        pytest.skip("brute force too large")
    assert counts(sp, q)["rho0"] == isotropic_lines(sp, q)


@pytest.mark.parametrize("q", [2, 3])
def test_family_e_count_from_congruence(e8, q):
    c = counts(e8, q)
    assert c["N_e"] == (count_congruence(e8, 0, q) - 1) * q


@pytest.mark.parametrize("name,q", [("n2det7", 2), ("n2det7", 3), ("n2det7", 5), ("a2", 2),
                                    ("a2", 5), ("d4", 3), ("e8", 2)])
def test_validate_reps(name, q):
    r = validate_reps(space(name), q)
    assert r["ok"], r


def test_reps_have_rank_one(n2det7):
    for fam in coset_reps(n2det7, 3):
        for R in fam.mats:
            assert rank_mod(R.astype(object), 3) == 1


def test_refuses_q_dividing_det(n2det7, a2):
    with pytest.raises(ValueError):
        coset_reps(n2det7, 7)
    with pytest.raises(ValueError):
        coset_reps(a2, 3)
    with pytest.raises(ValueError):
        coset_reps(a2, 4)


def test_family_f_needs_shifted_translation(n2det7):
    # translating family f along e_last instead of e_(j+1) repeats cosets
    q = 3
    fam = next(f for f in coset_reps(n2det7, q) if f.label == "f")
    S0 = n2det7.S0.astype(np.int64)
    n = n2det7.n
    elast = np.zeros(n + 2, dtype=np.int64)
    elast[-1] = 1
    for k in range(fam.count // q):
        base = fam.mats[k * q + q // 2]  # l = 0 in the balanced residues
        printed = base @ _translations(S0, [elast])[0]
        assert _same_coset(n2det7, printed, base, q)
        for i in range(q):
            if i != q // 2:
                assert not _same_coset(n2det7, fam.mats[k * q + i], base, q)


def test_row_lattice_key_is_basis_invariant():
    rng = np.random.default_rng(0)
    R = rng.integers(-5, 6, (4, 4))
    U = np.array([[1, 2, 0, 0], [0, 1, 0, 0], [0, 3, 1, 0], [1, 0, 0, 1]])
    assert row_lattice_key(R.tolist(), 9) == row_lattice_key((U @ R).tolist(), 9)
    assert row_lattice_key([[3, 0], [0, 0]], 9) != row_lattice_key([[1, 0], [0, 0]], 9)


# -- eigenvalues --------------------------------------------------------------

def test_rho_at_weight_zero(e8):
    assert rho(e8, 0, 2) == counts(e8, 2)["rho0"]


def test_rho_exceeds_trivial_bound(e8):
    q, k = 2, 14
    assert rho(e8, k, q) > Fraction(counts(e8, q)["rho0"]) / q ** k
    # for k below n + 2 the trivial bound still holds
    assert rho(e8, 4, q) <= counts(e8, q)["rho0"]


@pytest.mark.parametrize("k", [12, 14])
def test_eisenstein_eigenform_q2(e8, k):
    f = F(k, 4)
    g = apply_TSq(f, 2)
    assert g == f.restrict(2).scale(rho(e8, k, 2))


def test_zero_maps_to_zero(e8):
    z = FourierSeries.zero(e8, 14, 2, invariant=True)
    assert all(v == 0 for _, v in apply_TSq(z, 2).items())


def test_out_of_window_raises(e8):
    with pytest.raises(OutOfRange):
        apply_TSq(F(14, 1), 2)


def test_lambda_star_integral(e8):
    # the K nu / q lookups hit integral indices exactly when the phases allow
    q = 2
    fam = [f for f in coset_reps(e8, q) if f.label in "cdef"]
    nu = np.array((1, *Z8, 1))
    hits = 0
    for f in fam:
        for K in f.middle:
            v = K @ nu
            hits += bool((v % q == 0).all())
    assert hits > 0
    assert eps(e8, (1, *Z8, 1)) == 1


# -- oracles ------------------------------------------------------------------

@pytest.mark.parametrize("q", [2, 3, 5])
def test_TSq_matches_slash_sum(n2det7, q):
    f = random_finite(n2det7, 6, seed=q)
    mats = [R for fam in coset_reps(n2det7, q) for R in fam.reps()]
    g = apply_TSq(f, q, B_out=q)
    rng = np.random.default_rng(q)
    for _ in range(2):
        w = np.asarray(random_point(n2det7, rng, height=0.6), dtype=complex)
        a, b = eval_numeric(g, w), slash_sum_numeric(f, mats, w)
        assert abs(a - b) <= 1e-8 * max(1, abs(b))


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("which", ["up", "down"])
def test_Tp_matches_slash_sum(n2det7, p, which):
    f = random_finite(n2det7, 6, seed=10 + p)
    fn = apply_Tp_up if which == "up" else apply_Tp_down
    g = fn(f, p, B_out=p * p)
    mats = Tp_matrices(n2det7, p, which)
    rng = np.random.default_rng(p)
    for _ in range(3):
        w = np.asarray(random_point(n2det7, rng, height=0.25), dtype=complex)
        a, b = eval_numeric(g, w), slash_sum_numeric(f, mats, w)
        assert abs(a - b) <= 1e-8 * max(1, abs(b))


def test_Tp_matrices_are_similitudes(e8):
    from orthomf.orthogroup import is_similitude
    for which in ("up", "down"):
        for M in Tp_matrices(e8, 2, which):
            assert is_similitude(e8, M.M if hasattr(M, "M") else M, 4)


# -- Maass space ----------------------------------------------------------------

@pytest.fixture(scope="module")
def maass16():
    return random_maass(16, 6, [3, -7])


@pytest.mark.parametrize("p", [2, 3])
def test_Tp_up_equals_down_on_maass(maass16, p):
    assert apply_Tp_up(maass16, p) == apply_Tp_down(maass16, p)


def test_Tp_up_differs_after_perturbation(e8):
    f = random_maass(16, 4, [1, 2])
    lam = (1, *Z8, 4)
    vals = dict(f._vals)
    vals[f.key_of(lam)] += 1
    g = FourierSeries(e8, 16, 4, vals, invariant=True, _witness=f._wit)
    assert apply_Tp_up(g, 2) != apply_Tp_down(g, 2)


def test_TSq_preserves_maass_space(maass16):
    g = apply_TSq(maass16, 2)
    checked = 0
    for lam, _ in g.items():
        if any(lam):
            try:
                assert maass_defect(g, lam) == 0
                checked += 1
            except OutOfRange:
                pass
    assert checked >= 3


def test_TSq_commutes(maass16):
    a = apply_TSq(apply_TSq(maass16, 2, B_out=3), 3, B_out=1)
    b = apply_TSq(apply_TSq(maass16, 3, B_out=2), 2, B_out=1)
    assert a == b


def test_star_relation_eisenstein(e8):
    lhs, rhs = star_relation_check(F(14, 12), 2)
    assert len(lhs) >= 4 and lhs == rhs


def test_star_relation_random_maass():
    lhs, rhs = star_relation_check(random_maass(16, 12, [3, -7]), 2)
    assert len(lhs) >= 4 and lhs == rhs


def test_hecke_coefficient_linear(maass16):
    nu = (1, *Z8, 2)
    f2 = maass16.scale(2)
    assert hecke_coefficient(f2, 2, nu) == 2 * hecke_coefficient(maass16, 2, nu)


# -- elliptic Hecke operators ---------------------------------------------------

def test_ell_hecke_identity_and_constant():
    E = ell_eisenstein(10, 20)
    assert ell_hecke(E, 1) == E
    c = ell_eisenstein(0, 8)
    assert list(ell_hecke(c, 4).coeffs) == [sigma(-1, 4), 0, 0]


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([4, 6, 8, 10]), st.integers(1, 8))
def test_ell_hecke_raw_is_rescaled(kappa, m):
    E = ell_eisenstein(kappa, 24)
    raw = ell_hecke(E, m, normalized=False)
    assert raw == ell_hecke(E, m).scale(Fraction(m) ** (1 - kappa))


def test_ell_hecke_rejects_zero():
    with pytest.raises(ValueError):
        ell_hecke(ell_eisenstein(4, 4), 0)

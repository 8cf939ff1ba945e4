"""Hecke operators: coset representatives, eigenvalues and coefficient formulas.

For a prime ``q`` not dividing ``det S`` the double coset of
``diag(1, q, ..., q, q^2)`` splits into right cosets of six shapes
(labels ``a``-``f``).  Writing ``D_c = diag(1, q I, q^2)`` and
``D_d = diag(q^2, q I, 1)`` (size ``n + 2``) the representatives are

    a  diag(1, q I, q^2) M_lam                    lam in Z^(n+2) mod q
    b  diag(q^2, q I, 1)
    c  diag(q, D_c, q) R(K_x) M_(l e_1)            x mod q, l mod q
    d  diag(q, D_d, q) M_(l e_last)                l mod q
    e  diag(q, D_d, q) R(K~_mu) M_(l e_last)       mu != 0 mod q, S[mu]/2 = 0 mod q
    f  diag(q, D_d, q) R(K~_mu_j) R(K_e_j) M_(l e_(j+1))

where in ``f`` the vector ``mu_j`` satisfies ``S mu_j = (z_1, ..., z_{j-1}, -1,
0, ..., 0) mod q`` and ``S[mu_j]/2 = 0 mod q``; its translation runs along
the ``(j+1)``-th coordinate because the last column of the middle block
vanishes mod ``q``, so ``M_(l e_last)`` would not change the coset.  Residues are taken in the
balanced range.  The middle ``(n+2)``-blocks of ``c``-``f`` are the ``K`` in
the coefficient formula

    alpha_g(nu) = alpha_f(nu/q) + q^(n+2-2k) alpha_f(q nu)
                  + q^(1-k) sum_K alpha_f(K nu / q)

of ``g = f | T_S(q)`` (the sum over ``l`` collapses to the factor ``q``).
"""

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from itertools import product

import numpy as np

from .exact import as_rational, divisors, is_prime, sigma
from .fourier import EllSeries, FourierSeries, OutOfRange, eval_numeric, star
from .orthogroup import GElem, act

__all__ = [
    "CosetFamily",
    "coset_reps",
    "counts",
    "rho",
    "validate_reps",
    "row_lattice_key",
    "hecke_coefficient",
    "apply_TSq",
    "apply_Tp_up",
    "apply_Tp_down",
    "Tp_matrices",
    "slash_sum_numeric",
    "ell_hecke",
    "star_relation_check",
    "threads",
]


def threads():
    """Worker count from ``ORTHOMF_THREADS`` (default 1)."""
    try:
        return max(1, int(os.environ.get("ORTHOMF_THREADS", "1")))
    except ValueError:
        return 1


def _check_q(sp, q):
    if not is_prime(q):
        raise ValueError(f"q = {q} is not prime")
    if sp.detS % q == 0:
        raise ValueError(f"q = {q} divides det S = {sp.detS}; the coset list is not "
                         "known to be complete in that case")


def _balanced(q):
    return range(-(q // 2), q - q // 2)


def _eye_stack(N, size):
    return np.broadcast_to(np.eye(size, dtype=np.int64), (N, size, size)).copy()


def _translations(S0, lams):
    """Stack of ``M_lam`` for integral ``lams`` (rows)."""
    lams = np.asarray(lams, dtype=np.int64)
    N, m = lams.shape
    M = _eye_stack(N, m + 2)
    row = lams @ S0
    M[:, 0, 1:-1] = -row
    M[:, 0, -1] = -np.einsum("ij,ij->i", row, lams) // 2
    M[:, 1:-1, -1] = lams
    return M


def _rotations(Ks):
    Ks = np.asarray(Ks, dtype=np.int64)
    N, m, _ = Ks.shape
    R = _eye_stack(N, m + 2)
    R[:, 1:-1, 1:-1] = Ks
    return R


def _k_blocks(S, mus, tilde=False):
    """Stack of ``K_mu`` (or ``K~_mu``) blocks."""
    mus = np.asarray(mus, dtype=np.int64)
    N, n = mus.shape
    K = _eye_stack(N, n + 2)
    Smu = mus @ S
    half = np.einsum("ij,ij->i", Smu, mus) // 2
    if tilde:
        K[:, 1:-1, 0] = mus
        K[:, -1, 0] = half
        K[:, -1, 1:-1] = Smu
    else:
        K[:, 0, 1:-1] = Smu
        K[:, 0, -1] = half
        K[:, 1:-1, -1] = mus
    return K


@dataclass
class CosetFamily:
    """One of the six shapes of right-coset representatives.

    ``mats`` is an integer array of shape ``(count, n+4, n+4)``; ``middle``
    holds the distinct middle blocks (families ``c``-``f``, one per
    parameter before the sum over ``l``).
    """

    label: str
    q: int
    mats: np.ndarray
    middle: np.ndarray
    params: list

    @property
    def count(self):
        return len(self.mats)

    def reps(self):
        """The representatives as :class:`GElem` of scale ``q^2``."""
        return [GElem(R.astype(object), self.q ** 2) for R in self.mats]

    def __repr__(self):
        return f"CosetFamily({self.label!r}, count={self.count})"


def _family_f_vectors(sp, q):
    S = sp.S
    n = sp.n
    adj = np.array(sp._adj, dtype=np.int64)
    dinv = pow(sp.detS % q, -1, q)
    out = []
    for j in range(n):
        for head in product(range(q), repeat=j):
            zeta = np.zeros(n, dtype=np.int64)
            zeta[:j] = head
            zeta[j] = -1
            mu = (adj @ zeta * dinv) % q
            mu = np.where(mu > q // 2, mu - q, mu)
            if int(mu @ S @ mu) // 2 % q == 0:
                out.append((j, mu))
    return out


def coset_reps(sp, q):
    """The six representative families for ``q`` (``q`` prime, not dividing ``det S``)."""
    _check_q(sp, q)
    n = sp.n
    S = sp.S.astype(np.int64)
    S0 = sp.S0.astype(np.int64)
    res = list(_balanced(q))
    outer_c = np.diag([q] + [1] + [q] * n + [q * q, q]).astype(np.int64)
    outer_d = np.diag([q] + [q * q] + [q] * n + [1, q]).astype(np.int64)
    e1 = np.zeros(n + 2, dtype=np.int64)
    e1[0] = 1
    elast = np.zeros(n + 2, dtype=np.int64)
    elast[-1] = 1
    M_l1 = _translations(S0, [l * e1 for l in res])
    M_ll = _translations(S0, [l * elast for l in res])
    fams = []

    lams = np.array(list(product(res, repeat=n + 2)), dtype=np.int64)
    Da = np.diag([1] + [q] * (n + 2) + [q * q]).astype(np.int64)
    fams.append(CosetFamily("a", q, Da @ _translations(S0, lams), np.zeros((0, n + 2, n + 2), np.int64),
                            [tuple(x) for x in lams.tolist()]))
    Db = np.diag([q * q] + [q] * (n + 2) + [1]).astype(np.int64)
    fams.append(CosetFamily("b", q, Db[None], np.zeros((0, n + 2, n + 2), np.int64), [()]))

    def assemble(label, outer, Ks, Mls, params):
        R = outer @ _rotations(Ks)
        mats = np.einsum("kij,ljm->klim", R, Mls).reshape(-1, n + 4, n + 4)
        mid = np.einsum("ij,kjm->kim", outer[1:-1, 1:-1], Ks)
        full = [(p, l) for p in params for l in res]
        return CosetFamily(label, q, mats, mid, full)

    xs = np.array(list(product(res, repeat=n)), dtype=np.int64)
    fams.append(assemble("c", outer_c, _k_blocks(S, xs), M_l1, [tuple(x) for x in xs.tolist()]))
    fams.append(assemble("d", outer_d, _eye_stack(1, n + 2), M_ll, [()]))
    mus = np.array([x for x in xs if x.any() and int(x @ S @ x) // 2 % q == 0], dtype=np.int64)
    mus = mus.reshape(-1, n)
    fams.append(assemble("e", outer_d, _k_blocks(S, mus, tilde=True), M_ll,
                         [tuple(x) for x in mus.tolist()]))
    fv = _family_f_vectors(sp, q)
    if fv:
        ej = np.eye(n, dtype=np.int64)[[j for j, _ in fv]]
        Kf = np.einsum("kij,kjm->kim", _k_blocks(S, np.array([m for _, m in fv]), tilde=True),
                       _k_blocks(S, ej))
        # the last column of K is 0 mod q here, so translate along e_(j+1) instead
        R = outer_d @ _rotations(Kf)
        Mj = np.stack([_translations(S0, [l * np.eye(n + 2, dtype=np.int64)[j + 1] for l in res])
                       for j, _ in fv])
        mats = np.einsum("kij,kljm->klim", R, Mj).reshape(-1, n + 4, n + 4)
        mid = np.einsum("ij,kjm->kim", outer_d[1:-1, 1:-1], Kf)
    else:
        mats = np.zeros((0, n + 4, n + 4), np.int64)
        mid = np.zeros((0, n + 2, n + 2), np.int64)
    fams.append(CosetFamily("f", q, mats, mid, [((j + 1, tuple(m.tolist())), l) for j, m in fv
                                               for l in res]))
    return fams


_COUNTS = {}


def counts(sp, q, families=None):
    """Coset counts per family, ``N = N_c + N_d + N_e + N_f`` and ``rho0``."""
    key = (sp.gram_hash, q)
    if families is None and key in _COUNTS:
        return dict(_COUNTS[key])
    fams = families or coset_reps(sp, q)
    out = {f"N_{f.label}": f.count for f in fams}
    out["N"] = sum(out[f"N_{x}"] for x in "cdef")
    out["rho0"] = sum(f.count for f in fams)
    _COUNTS[key] = dict(out)
    return out


def rho(sp, k, q, families=None):
    """``sum delta^(-k)`` over the cosets: ``1 + q^(n+2-2k) + N q^(-k)``."""
    c = counts(sp, q, families)
    n = sp.n
    return as_rational(1 + Fraction(q) ** (n + 2 - 2 * k) + c["N"] * Fraction(q) ** (-k))


# -- validation ---------------------------------------------------------------

def _rank_le1_mod(mats, q):
    """Vectorized test that each matrix has rank <= 1 over Z/qZ."""
    A = mats % q
    N = len(A)
    flat = A.reshape(N, -1)
    nz = flat != 0
    has = nz.any(axis=1)
    piv = np.argmax(nz, axis=1)
    i0, j0 = np.divmod(piv, A.shape[2])
    idx = np.arange(N)
    p = A[idx, i0, j0]
    col = A[idx, :, j0]
    row = A[idx, i0, :]
    lhs = (p[:, None, None] * A) % q
    rhs = (col[:, :, None] * row[:, None, :]) % q
    return (lhs == rhs).all(axis=(1, 2)), has


def row_lattice_key(R, D):
    """Canonical basis of ``Z^m R + D Z^m`` (a Howell form modulo ``D``)."""
    m = len(R[0])
    work = [[int(x) % D for x in row] for row in R]
    work = [r for r in work if any(r)]
    basis = []
    for c in range(m):
        pivot = None
        rest = []
        for r in work:
            if r[c] % D == 0:
                rest.append(r)
                continue
            if pivot is None:
                pivot = r
                continue
            a, b = pivot[c], r[c]
            # extended gcd on the pivot column
            x0, x1, y0, y1, aa, bb = 1, 0, 0, 1, a, b
            while bb:
                t = aa // bb
                aa, bb = bb, aa - t * bb
                x0, x1 = x1, x0 - t * x1
                y0, y1 = y1, y0 - t * y1
            g = aa
            new_p = [(x0 * u + y0 * v) % D for u, v in zip(pivot, r)]
            other = [((b // g) * u - (a // g) * v) % D for u, v in zip(pivot, r)]
            pivot = new_p
            if any(other):
                rest.append(other)
        if pivot is None:
            work = rest
            continue
        g = gcd(pivot[c], D)
        # normalize the pivot entry to gcd(pivot, D) with a unit multiplier
        u = pivot[c] // g
        Dg = D // g
        unit = next(t for t in range(1, Dg + 1) if (u * t) % Dg == 1 % Dg and gcd(t, D) == 1) \
            if Dg > 1 else 1
        pivot = [(unit * x) % D for x in pivot]
        extra = [((D // g) * x) % D for x in pivot]
        if any(extra):
            rest.append(extra)
        basis.append((c, pivot))
        work = [r for r in rest if any(r)]
    # reduce entries above each pivot
    out = [list(p) for _, p in basis]
    for i, (c, p) in enumerate(basis):
        g = p[c]
        for t in range(i):
            f = out[t][c] // g
            if f:
                out[t] = [(x - f * y) % D for x, y in zip(out[t], out[i])]
    return tuple(tuple(r) for r in out)


def _key_chunk(args):
    rows, D = args
    return [row_lattice_key(R, D) for R in rows]


def _lattice_keys(mats, D):
    """Row-lattice keys, spread over ``ORTHOMF_THREADS`` worker processes."""
    rows = [R.tolist() for R in mats]
    workers = threads()
    if workers <= 1 or len(rows) < 2000:
        return _key_chunk((rows, D))
    size = -(-len(rows) // workers)
    chunks = [(rows[i:i + size], D) for i in range(0, len(rows), size)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return [key for part in pool.map(_key_chunk, chunks) for key in part]


def _same_coset(sp, Ri, Rj, q):
    """``Ri Rj^{-1}`` lies in the discriminant kernel."""
    S1 = sp.S1.astype(object)
    X = Ri.astype(object) @ sp.S1_inv @ Rj.T.astype(object) @ S1
    if any(Fraction(x) % (q * q) for x in X.ravel()):
        return False
    X = np.vectorize(lambda x: as_rational(Fraction(x, q * q)), otypes=[object])(X)
    D = (X - np.eye(len(X), dtype=int).astype(object)) @ sp.S1_inv
    return all(Fraction(x).denominator == 1 for x in D.ravel())


def validate_reps(sp, q, families=None, check_distinct=True, skip_distinct=()):
    """Run the structural checks on the representatives; returns a report dict.

    * every ``R`` satisfies ``S1[R] = q^2 S1`` and has rank 1 mod ``q``;
    * ``R / q`` has determinant 1 and maps the base point into the half-space;
    * cosets are pairwise distinct: the gcd of the first column separates
      ``a`` / ``b`` / ``c``-``f``, and inside each of those groups row
      lattices (Howell form mod ``q^2``) are compared, with an explicit
      ``R_i R_j^{-1}`` membership test whenever two lattices coincide.
    Groups listed in ``skip_distinct`` (``"a"`` or ``"cdef"``) are not
    compared pairwise.
    """
    fams = families or coset_reps(sp, q)
    n = sp.n
    S1 = sp.S1.astype(np.int64)
    report = {"q": q, "families": {f.label: f.count for f in fams}}
    sim_ok = rank_ok = orient_ok = True
    w0 = np.zeros(n + 2, dtype=np.complex128)
    w0[0] = w0[-1] = 1j
    for fam in fams:
        R = fam.mats
        if not len(R):
            continue
        lhs = np.einsum("kji,jl,klm->kim", R, S1, R)
        sim_ok &= bool((lhs == q * q * S1).all())
        r1, nonzero = _rank_le1_mod(R, q)
        rank_ok &= bool((r1 & nonzero).all())
        dets = np.linalg.det(R.astype(np.float64) / q)
        orient_ok &= bool(np.allclose(dets, 1.0, rtol=1e-6))
        for Rm in R[:: max(1, len(R) // 64)]:
            img, _ = act(sp, GElem(Rm.astype(object), q * q), w0)
            v = img.imag
            orient_ok &= bool(v[0] > 0 and v[-1] > 0 and v @ sp.S0 @ v > 0)
    report["similitude"] = sim_ok
    report["rank1"] = rank_ok
    report["orientation"] = orient_ok
    alpha = {f.label: {int(np.gcd.reduce(R[:, 0])) for R in f.mats} for f in fams}
    report["alpha"] = {k: sorted(v) for k, v in alpha.items()}
    groups = {"a": ["a"], "b": ["b"], "cdef": ["c", "d", "e", "f"]}
    expected = {"a": {1}, "b": {q * q}, "cdef": {q}}
    sep_ok = all(alpha[lab] <= expected[g] for g, labs in groups.items() for lab in labs)
    report["alpha_separates"] = sep_ok
    distinct = True
    checked = 0
    if check_distinct:
        by_label = {f.label: f for f in fams}
        for g, labs in groups.items():
            if g in skip_distinct:
                continue
            mats = [R for lab in labs for R in by_label[lab].mats]
            seen = {}
            for R, key in zip(mats, _lattice_keys(mats, q * q)):
                seen.setdefault(key, []).append(R)
            checked += len(mats)
            for bucket in seen.values():
                for i in range(len(bucket)):
                    for j in range(i):
                        if _same_coset(sp, bucket[i], bucket[j], q):
                            distinct = False
    report["distinct"] = distinct
    report["distinct_checked"] = checked
    c = counts(sp, q, fams)
    report.update(c)
    report["count_formula"] = c["rho0"] == 1 + q ** (n + 2) + c["N"]
    report["ok"] = all(report[x] for x in ("similitude", "rank1", "orientation",
                                              "alpha_separates", "distinct", "count_formula"))
    return report


# -- coefficient-level operators ---------------------------------------------------

def _middle_stack(sp, q, families=None):
    fams = families or coset_reps(sp, q)
    return np.concatenate([f.middle for f in fams if f.label in "cdef"], axis=0)


_MIDDLE_CACHE = {}


def _middle_cached(sp, q):
    key = (sp.gram_hash, q)
    if key not in _MIDDLE_CACHE:
        _MIDDLE_CACHE[key] = _middle_stack(sp, q)
    return _MIDDLE_CACHE[key]


def hecke_coefficient(f, q, nu, middle=None):
    """Coefficient of ``f | T_S(q)`` at ``nu``."""
    sp = f.space
    _check_q(sp, q)
    middle = _middle_cached(sp, q) if middle is None else middle
    k, n = f.k, sp.n
    nu = tuple(as_rational(x) for x in nu)
    total = Fraction(f.coeff(tuple(Fraction(x) / q for x in nu)))
    total += Fraction(q) ** (n + 2 - 2 * k) * Fraction(f.coeff(tuple(q * x for x in nu)))
    if sp.unimodular and all(isinstance(x, int) for x in nu):
        L = middle @ np.array(nu, dtype=np.int64)
    else:
        L = middle.astype(object) @ np.array(nu, dtype=object)
    total += Fraction(q) ** (1 - k) * sum(Fraction(v) for v in f.lookup_many(L, q))
    return as_rational(total)


def apply_TSq(f, q, B_out=None):
    """``f | T_S(q)`` on the window ``m, l <= floor(B/q)`` (or ``B_out``)."""
    sp = f.space
    _check_q(sp, q)
    if f.B < q and B_out is None:
        raise OutOfRange(f"window B = {f.B} is smaller than q = {q}")
    B = f.B // q if B_out is None else B_out
    middle = _middle_cached(sp, q)
    wit = FourierSeries.window(sp, B, f.invariant)
    vals = {key: hecke_coefficient(f, q, lam, middle) for key, lam in wit.items()}
    return FourierSeries(sp, f.k, B, vals, invariant=f.invariant, _witness=wit)


def _apply(f, p, B_out, rule):
    sp = f.space
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if f.B < p and B_out is None:
        raise OutOfRange(f"window B = {f.B} is smaller than p = {p}")
    B = f.B // p if B_out is None else B_out
    wit = FourierSeries.window(sp, B, f.invariant)
    vals = {key: as_rational(rule(lam)) for key, lam in wit.items()}
    return FourierSeries(sp, f.k, B, vals, invariant=f.invariant, _witness=wit)


def apply_Tp_up(f, p, B_out=None):
    """``alpha(m, mu/p, l/p^2) + p^(1-k) [p | l] alpha(m, mu, l)``."""
    k = f.k

    def rule(lam):
        m, l = lam[0], lam[-1]
        mu = lam[1:-1]
        a = Fraction(f.coeff((m, *(Fraction(x) / p for x in mu), Fraction(l, p * p))))
        b = Fraction(f.coeff(lam)) if l % p == 0 else 0
        return a + Fraction(p) ** (1 - k) * b

    return _apply(f, p, B_out, rule)


def apply_Tp_down(f, p, B_out=None):
    """``alpha(lam/p) + p^(1-k) alpha(p m, mu, l/p)``."""
    k = f.k

    def rule(lam):
        m, l = lam[0], lam[-1]
        mu = lam[1:-1]
        a = Fraction(f.coeff(tuple(Fraction(x) / p for x in lam)))
        b = Fraction(f.coeff((p * m, *mu, Fraction(l, p))))
        return a + Fraction(p) ** (1 - k) * b

    return _apply(f, p, B_out, rule)


def Tp_matrices(sp, p, which):
    """Explicit similitudes (scale ``p^2``) whose slash-sum defines ``T_p`` up/down.

    ``down``: ``diag(p^2, p I_(n+2), 1)`` and ``diag(p, p^2, p I_n, 1, p) M_(l e_last)``;
    ``up``: ``diag(p^2, p^2, p I_n, 1, 1)`` and ``p M_((l/p) e_1)``; ``l`` mod ``p``.
    """
    n = sp.n
    S0 = sp.S0.astype(np.int64)
    res = list(range(p))
    out = []
    if which == "down":
        out.append(np.diag([p * p] + [p] * (n + 2) + [1]))
        D = np.diag([p, p * p] + [p] * n + [1, p])
        elast = np.zeros(n + 2, dtype=np.int64)
        elast[-1] = 1
        out.extend(D @ _translations(S0, [l * elast for l in res]))
    elif which == "up":
        out.append(np.diag([p * p, p * p] + [p] * n + [1, 1]))
        for l in res:
            lam = np.zeros(n + 2, dtype=object)
            lam[0] = Fraction(l, p)
            M = np.eye(n + 4, dtype=int).astype(object)
            M[0, 1:-1] = -(lam @ S0.astype(object))
            M[0, -1] = 0
            M[1:-1, -1] = lam
            out.append(p * M)
    else:
        raise ValueError("which must be 'up' or 'down'")
    return [GElem(np.asarray(M, dtype=object), p * p) for M in out]


def slash_sum_numeric(f, mats, w):
    """``sum_R f(R<w>) R{w}^(-k)`` in floating point."""
    w = np.asarray(w, dtype=np.complex128)
    total = 0j
    for M in mats:
        image, j = act(f.space, M, w)
        total += eval_numeric(f, image) * j ** (-f.k)
    return total


# -- elliptic Hecke operators -------------------------------------------------------

def ell_hecke(g, m, normalized=True):
    """Elliptic ``T(m)`` on a truncated expansion of weight ``kappa``.

    The normalized operator is ``sum_{d | (m, n)} d^(kappa-1) c(m n / d^2)``
    (eigenvalue ``sigma_{kappa-1}(m)`` on ``E_kappa``).  With
    ``normalized=False`` the operator is the plain coset sum without
    normalizing factor, ``m^(1 - kappa)`` times the normalized one.  The
    result has length ``floor(N/m)``.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    kappa = g.weight
    top = g.N // m
    out = []
    for n in range(top + 1):
        if n == 0:
            s = sigma(kappa - 1, m) * Fraction(g[0])
        else:
            s = sum(d ** (kappa - 1) * Fraction(g[m * n // (d * d)])
                    for d in divisors(gcd(m, n)))
        out.append(s if normalized else Fraction(m) ** (1 - kappa) * s)
    return EllSeries(kappa, out)


def star_relation_check(f, q, N_f=None):
    """Both sides of the star-image relation for ``g = f | T_S(q)``.

    Returns ``(g*, f*|T(q^2) + (q^(n+1) + q^n - q^(n/2) + N') q^(-k) f*)``
    with ``N'`` the size of family ``f``, each on the common length
    ``floor(len(f*) / q^2)``.
    """
    sp = f.space
    _check_q(sp, q)
    if not sp.unimodular:
        raise ValueError("the star relation needs det S = 1")
    n, k = sp.n, f.k
    if N_f is None:
        N_f = counts(sp, q)["N_f"]
    fs = star(f)
    rhs_hecke = ell_hecke(fs, q * q, normalized=False)
    L = rhs_hecke.N
    zero = (0,) * n
    middle = _middle_cached(sp, q)
    lhs = EllSeries(fs.weight, [hecke_coefficient(f, q, (l, *zero, 1), middle) for l in range(L + 1)])
    factor = Fraction(q ** (n + 1) + q ** n - q ** (n // 2) + N_f) / q ** k
    rhs = EllSeries(fs.weight, [a + factor * b for a, b in zip(rhs_hecke.coeffs, fs.coeffs)])
    return lhs, rhs

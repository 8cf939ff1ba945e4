"""Quadratic spaces, the Fourier-index cone and lattice point enumeration.

A positive definite even Gram matrix ``S`` of size ``n`` determines

    S0 = [[0, 0, 1], [0, -S, 0], [1, 0, 0]]      (size n + 2)
    S1 = [[0, 0, 1], [0, S0, 0], [1, 0, 0]]      (size n + 4)

Fourier indices ``lam = (m, mu, l)`` live in the dual lattice
``L0# = S0^{-1} Z^{n+2}``; ``m`` and ``l`` are always integers while ``mu``
lies in ``S^{-1} Z^n``.  Indices are plain tuples; integral entries are
Python ints and the others are Fractions.

All enumeration is exact: the Fincke-Pohst search below runs on a
fraction-free LDL^T decomposition with integer bounds only.
"""

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from importlib import resources
from itertools import product
from math import gcd, lcm
from pathlib import Path

import numpy as np

from .exact import as_rational, divisors, gcd_vec, is_prime
from .weyl import weyl_from_gram

__all__ = [
    "ValidationError",
    "QSpace",
    "build_space",
    "load_gram",
    "bundled_grams",
    "form_value",
    "split_index",
    "norm",
    "eps",
    "in_dual",
    "in_cone",
    "short_vectors",
    "dual_short_vectors",
    "enumerate_cone",
    "enumerate_cone_orbits",
    "isotropic_pairs",
    "count_congruence",
    "half_norm_residues",
]


class ValidationError(ValueError):
    """Raised when a Gram matrix violates the standing assumptions."""


def _exact_det(rows):
    A = [[Fraction(x) for x in r] for r in rows]
    n, det = len(A), Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det *= A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] / A[c][c]
            if f:
                A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return as_rational(det)


def _adjugate(S):
    n = len(S)
    if n == 1:
        return [[1]]
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[S[r][c] for c in range(n) if c != i] for r in range(n) if r != j]
            adj[i][j] = (-1) ** (i + j) * _exact_det(minor)
    return adj


def _block_S0(S):
    n = len(S)
    S0 = np.zeros((n + 2, n + 2), dtype=np.int64)
    S0[0, -1] = S0[-1, 0] = 1
    S0[1:-1, 1:-1] = -np.asarray(S, dtype=np.int64)
    return S0


def _block_S1(S0):
    k = S0.shape[0]
    S1 = np.zeros((k + 2, k + 2), dtype=np.int64)
    S1[0, -1] = S1[-1, 0] = 1
    S1[1:-1, 1:-1] = S0
    return S1


@dataclass(frozen=True, eq=False)
class QSpace:
    """The Gram triple ``(S, S0, S1)`` for a positive definite even ``S``."""

    S: np.ndarray
    S0: np.ndarray
    S1: np.ndarray
    detS: int
    name: str = ""
    _adj: tuple = field(repr=False, default=())

    @property
    def n(self):
        return self.S.shape[0]

    @property
    def unimodular(self):
        return self.detS == 1

    @cached_property
    def S_inv(self):
        """``S^{-1}`` as an object array of Fractions (ints when unimodular)."""
        inv = np.empty((self.n, self.n), dtype=object)
        for i in range(self.n):
            for j in range(self.n):
                inv[i, j] = as_rational(Fraction(self._adj[i][j], self.detS))
        return inv

    @cached_property
    def S1_inv(self):
        """``S1^{-1}`` as an object array."""
        n = self.n
        inv = np.zeros((n + 4, n + 4), dtype=object)
        inv[0, -1] = inv[-1, 0] = 1
        inv[1, -2] = inv[-2, 1] = 1
        inv[2:-2, 2:-2] = -self.S_inv
        return inv

    @cached_property
    def weyl(self):
        """Weyl group data when ``S`` is an ADE Cartan matrix, else ``None``."""
        return weyl_from_gram(self.S)

    @cached_property
    def gram_hash(self):
        blob = json.dumps({"n": self.n, "rows": self.S.tolist()}, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]

    @property
    def index_dtype(self):
        """Array dtype able to hold Fourier indices exactly."""
        return np.int64 if self.unimodular else object

    def __repr__(self):
        label = self.name or f"n={self.n}"
        return f"QSpace({label}, det S = {self.detS})"


def build_space(S, name=""):
    """Validate ``S`` and assemble the bordered Gram matrices.

    Checks symmetry, even diagonal and positive definiteness (all leading
    principal minors positive).  Maximality of the even lattice is not
    checked.
    """
    rows = [[int(x) for x in r] for r in S]
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise ValidationError("S must be a nonempty square matrix")
    for i in range(n):
        for j in range(i):
            if rows[i][j] != rows[j][i]:
                raise ValidationError(f"S is not symmetric: S[{i}][{j}] != S[{j}][{i}]")
    for i in range(n):
        if rows[i][i] % 2:
            raise ValidationError(f"S is not even: diagonal entry S[{i}][{i}] = {rows[i][i]}")
    for k in range(1, n + 1):
        minor = _exact_det([r[:k] for r in rows[:k]])
        if minor <= 0:
            raise ValidationError(
                f"S is not positive definite: leading {k}x{k} minor is {minor}")
    detS = _exact_det(rows)
    Sarr = np.array(rows, dtype=np.int64)
    S0 = _block_S0(rows)
    S1 = _block_S1(S0)
    d0, d1 = _exact_det(S0.tolist()), _exact_det(S1.tolist())
    if abs(d0) != detS or abs(d1) != detS:
        raise ValidationError("bordered Gram matrices have the wrong determinant")
    for a in (Sarr, S0, S1):
        a.setflags(write=False)
    return QSpace(Sarr, S0, S1, detS, name, tuple(map(tuple, _adjugate(rows))))


def _fixture_path(name):
    return resources.files("orthomf") / "data" / name


def bundled_grams():
    """Names of the bundled Gram fixtures."""
    return sorted(p.name[:-5] for p in (resources.files("orthomf") / "data").iterdir()
                  if p.name.endswith(".json"))


def load_gram(path, name=None):
    """Load ``{"n": int, "rows": [[...], ...]}`` and build the space.

    ``path`` may also name a bundled fixture: ``e8``, ``d4``, ``a2`` or
    ``n2det7`` (with or without ``.json``).
    """
    p = Path(path)
    if not p.exists():
        bundled = p.name if p.suffix == ".json" else p.name + ".json"
        ref = _fixture_path(bundled)
        if not ref.is_file():
            raise FileNotFoundError(path)
        text = ref.read_text()
    else:
        text = p.read_text()
    data = json.loads(text)
    rows = data["rows"]
    if data.get("n", len(rows)) != len(rows):
        raise ValidationError("gram file: 'n' does not match the number of rows")
    return build_space(rows, name or p.stem)


def _obj(a):
    a = np.asarray(a)
    return a if a.dtype == object else a.astype(object)


def form_value(T, B):
    """``T[B] = B^tr T B`` exactly; a scalar when ``B`` is a vector."""
    T, B = _obj(T), _obj(B)
    if T.ndim != 2 or T.shape[0] != T.shape[1]:
        raise ValueError("form_value: T must be square")
    if B.shape[0] != T.shape[0]:
        raise ValueError(f"form_value: dimension mismatch {T.shape} vs {B.shape}")
    out = B.T @ T @ B
    if B.ndim == 1:
        return as_rational(out)
    return np.vectorize(as_rational, otypes=[object])(out)


def split_index(lam):
    """``(m, mu, l)`` accessors of an index tuple."""
    lam = tuple(lam)
    return lam[0], lam[1:-1], lam[-1]


def norm(sp, lam):
    """``S0[lam] = 2 m l - S[mu]``."""
    m, mu, l = split_index(lam)
    s = 0
    S = sp.S
    for i, a in enumerate(mu):
        if a:
            for j, b in enumerate(mu):
                if b:
                    s += int(S[i, j]) * a * b
    return as_rational(2 * m * l - s)


def _S0_times(sp, lam):
    m, mu, l = split_index(lam)
    S = sp.S
    Smu = [sum(int(S[i, j]) * mu[j] for j in range(len(mu))) for i in range(len(mu))]
    return [l] + [-x for x in Smu] + [m]


def in_dual(sp, lam):
    """Membership in ``L0# = S0^{-1} Z^{n+2}``."""
    return all(Fraction(x).denominator == 1 for x in _S0_times(sp, lam))


def eps(sp, lam):
    """``gcd(S0 lam)`` for ``lam`` in the dual lattice (0 for ``lam = 0``)."""
    return gcd_vec(_S0_times(sp, lam))


def in_cone(sp, lam):
    m, _, l = split_index(lam)
    return m >= 0 and l >= 0 and norm(sp, lam) >= 0


# -- enumeration -----------------------------------------------------------

def _ldl_integer(Q):
    """Fraction-free LDL^T data: leading minors and the integer matrix ``C``.

    ``Q[x] = sum_i z_i**2 / (D[i] * D[i+1])`` with ``z = x @ C``, where ``D``
    holds the leading principal minors (``D[0] = 1``) and ``z_i`` only
    depends on ``x_i, ..., x_{n-1}``.
    """
    n = len(Q)
    A = [[Fraction(int(x)) for x in r] for r in Q]
    L = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    d = []
    for i in range(n):
        di = A[i][i] - sum(L[i][k] ** 2 * d[k] for k in range(i))
        if di <= 0:
            raise ValidationError("form is not positive definite")
        d.append(di)
        for j in range(i + 1, n):
            L[j][i] = (A[j][i] - sum(L[j][k] * L[i][k] * d[k] for k in range(i))) / di
    D = [1]
    for di in d:
        D.append(D[-1] * di)
    D = [as_rational(x) for x in D]
    C = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        C[i, i] = D[i + 1]
        for j in range(i + 1, n):
            v = L[j][i] * D[i + 1]
            if v.denominator != 1:
                raise AssertionError("fraction-free LDL produced a non-integer")
            C[j, i] = int(v)
    return D, C


def _isqrt_vec(R):
    r = np.floor(np.sqrt(R.astype(np.float64))).astype(np.int64)
    r = np.maximum(r, 0)
    while True:
        up = (r + 1) * (r + 1) <= R
        if not up.any():
            break
        r[up] += 1
    while True:
        down = r * r > R
        if not down.any():
            break
        r[down] -= 1
    return r


def _enumerate(Q, bound, nonneg=False):
    """All ``x in Z^n`` with ``Q[x] <= bound`` (``Q`` integer positive definite).

    Branch-and-bound over coordinates from last to first; every pruning
    decision is an integer inequality.  With ``nonneg`` only ``x >= 0``.
    """
    Q = np.asarray(Q, dtype=np.int64)
    n = Q.shape[0]
    bound = int(bound)
    if bound < 0:
        return np.zeros((0, n), dtype=np.int64)
    D, C = _ldl_integer(Q)
    w = [D[i] * D[i + 1] for i in range(n)]
    scale = lcm(*w)
    if bound * scale >= 2 ** 62:
        raise OverflowError("enumeration bound too large for int64 arithmetic")
    X = np.zeros((1, n), dtype=np.int64)
    rem = np.array([bound * scale], dtype=np.int64)
    for i in range(n - 1, -1, -1):
        s = X[:, i + 1:] @ C[i + 1:, i] if i < n - 1 else np.zeros(len(X), dtype=np.int64)
        r = _isqrt_vec(rem // (scale // w[i]))
        Di = D[i + 1]
        lo = -((r + s) // Di)
        hi = (r - s) // Di
        if nonneg:
            lo = np.maximum(lo, 0)
        cnt = np.maximum(hi - lo + 1, 0)
        keep = cnt > 0
        X, rem, lo, cnt, s = X[keep], rem[keep], lo[keep], cnt[keep], s[keep]
        if not len(X):
            return np.zeros((0, n), dtype=np.int64)
        rep = np.repeat(np.arange(len(X)), cnt)
        offs = np.arange(cnt.sum()) - np.repeat(np.cumsum(cnt) - cnt, cnt)
        X = X[rep].copy()
        X[:, i] = lo[rep] + offs
        z = Di * X[:, i] + s[rep]
        rem = rem[rep] - z * z * (scale // w[i])
    vals = np.einsum("ij,jk,ik->i", X, Q, X)
    assert (vals <= bound).all()
    order = np.lexsort(tuple(X[:, ::-1].T) + (vals,))
    return X[order]


def short_vectors(S, t):
    """All ``mu in Z^n`` with ``S[mu] <= 2 t``, sorted by norm then entries."""
    return _enumerate(S, 2 * t)


def _sorted_objects(rows, key_norm):
    return sorted(rows, key=lambda r: (key_norm(r), tuple(r)))


def dual_short_vectors(sp, t):
    """All ``mu in S^{-1} Z^n`` with ``S[mu] <= 2 t`` (int64 if unimodular).

    Also returns the exact norms ``S[mu]``.
    """
    if sp.unimodular:
        X = _enumerate(sp.S, 2 * t)
        return X, np.einsum("ij,jk,ik->i", X, sp.S, X)
    adj = np.array(sp._adj, dtype=np.int64)
    C = _enumerate(adj, 2 * t * sp.detS)
    X = C.astype(object) @ sp.S_inv
    X = np.vectorize(as_rational, otypes=[object])(X)
    norms = np.array([as_rational(form_value(sp.S, x)) for x in X], dtype=object)
    order = sorted(range(len(X)), key=lambda i: (norms[i], tuple(X[i])))
    return X[order] if len(X) else X.reshape(0, sp.n), norms[order]


def enumerate_cone(sp, B):
    """Every cone index ``(m, mu, l)`` of ``L0#`` with ``0 <= m, l <= B``, sorted."""
    if B < 0:
        return []
    X, norms = dual_short_vectors(sp, B * B)
    out = []
    for m in range(B + 1):
        for l in range(B + 1):
            cap = 2 * m * l
            k = np.searchsorted(norms, cap, side="right") if sp.unimodular else \
                sum(1 for v in norms if v <= cap)
            for row in X[:k]:
                out.append((m, *(as_rational(x) for x in row), l))
    out.sort()
    return out


def enumerate_cone_orbits(sp, B):
    """Orbit representatives of the cone window under ``W`` acting on ``mu``.

    Returns ``[(lam, orbit_size), ...]`` with ``mu`` dominant.  Without a
    Weyl group every index is its own orbit.
    """
    W = sp.weyl
    if W is None:
        return [(lam, 1) for lam in enumerate_cone(sp, B)]
    # dominant mu <=> c = S mu >= 0; enumerate c with c^tr S^{-1} c <= 2 t
    adj = np.array(sp._adj, dtype=np.int64)
    C = _enumerate(adj, 2 * B * B * sp.detS, nonneg=True)
    reps = []
    for c in C:
        mu = c.astype(object) @ sp.S_inv
        mu = tuple(as_rational(x) for x in mu)
        reps.append((as_rational(Fraction(int(c @ adj @ c), sp.detS)), mu, c))
    out = []
    for m in range(B + 1):
        for l in range(B + 1):
            cap = 2 * m * l
            for nrm, mu, c in reps:
                if nrm <= cap:
                    size = W.order // W.stabilizer_order(c)
                    out.append(((m, *mu, l), size))
    out.sort()
    return out


def isotropic_pairs(sp, lam):
    """Ordered pairs ``(nu, rho)`` of nonzero isotropic cone indices with ``nu + rho = lam``."""
    m, mu, l = split_index(lam)
    if not in_cone(sp, lam):
        raise ValueError("isotropic_pairs: lam must lie in the cone")
    X, norms = dual_short_vectors(sp, m * l)
    mu = np.array(mu, dtype=X.dtype)
    S = sp.S.astype(X.dtype)
    out = []
    for a in range(m + 1):
        for b in range(l + 1):
            cand = X[norms == 2 * a * b]
            if not len(cand):
                continue
            D = mu[None, :] - cand
            rest = ((D @ S) * D).sum(axis=1)
            ok = rest == 2 * (m - a) * (l - b)
            for x in cand[ok]:
                nu = (a, *(as_rational(v) for v in x), b)
                rho = tuple(as_rational(p - q) for p, q in zip(lam, nu))
                if any(nu) and any(rho):
                    out.append((nu, rho))
    out.sort()
    return out


def half_norm_residues(S, q):
    """Histogram of ``S[nu]/2 mod q`` over ``nu in (Z/qZ)^n`` (length-``q`` array)."""
    S = np.asarray(S, dtype=np.int64)
    n = S.shape[0]
    if not is_prime(q):
        raise ValueError(f"q = {q} is not prime")
    grid = np.array(list(product(range(q), repeat=n)), dtype=np.int64)
    half = np.einsum("ij,jk,ik->i", grid, S, grid) // 2
    return np.bincount(half % q, minlength=q)


def count_congruence(sp, l, q):
    """``#{nu mod q : S[nu]/2 = -l mod q}`` by enumeration of ``(Z/qZ)^n``."""
    if not is_prime(q):
        raise ValueError(f"q = {q} is not prime")
    if not sp.unimodular or sp.n % 2:
        raise ValueError("count_congruence needs det S = 1 and n even")
    return int(half_norm_residues(sp.S, q)[(-l) % q])

"""Similitudes of ``S1``, the standard generators and the action on the half-space.

Matrices are numpy object arrays holding Python ints and Fractions, so every
identity here is checked exactly.  A point of the half-space is a length
``n + 2`` vector ``w = (tau, z, tau')``; it is either a complex numpy array
(floating evaluation) or a sequence of Gaussian rationals from sympy's
``QQ_I`` domain (exact evaluation).
"""

from fractions import Fraction

import numpy as np
from sympy.polys.domains import QQ_I

from .exact import as_rational, fmt_rat, parse_rat

__all__ = [
    "GElem",
    "HPoint",
    "SingularCocycle",
    "exact_det",
    "is_similitude",
    "rank_mod",
    "in_SO_plus",
    "in_discriminant_kernel",
    "embed_up",
    "embed_down",
    "translation",
    "rotation",
    "k_mu",
    "k_tilde_mu",
    "k_hat",
    "block_k_mu",
    "block_k_tilde_mu",
    "block_k_hat",
    "act",
    "base_point",
    "random_point",
    "random_generator",
    "random_word",
]


class SingularCocycle(ZeroDivisionError):
    """``M{w} = 0``: the action is undefined at this point."""


def _as_obj(M):
    A = np.array(M, dtype=object)
    return np.vectorize(as_rational, otypes=[object])(A) if A.size else A


def exact_det(M):
    """Determinant by exact Gaussian elimination."""
    A = [[Fraction(x) for x in row] for row in np.asarray(M, dtype=object)]
    n, det = len(A), Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det *= A[c][c]
        inv = 1 / A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] * inv
            if f:
                A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return as_rational(det)


class GElem:
    """A rational similitude ``M`` of ``S1`` with ``S1[M] = scale * S1``."""

    __slots__ = ("mat", "scale")

    def __init__(self, mat, scale=1, sp=None):
        self.mat = _as_obj(mat)
        self.scale = as_rational(scale)
        if sp is not None and not is_similitude(sp, self.mat, self.scale):
            raise ValueError("matrix is not a similitude of S1 with the given scale")

    @property
    def size(self):
        return self.mat.shape[0]

    def __matmul__(self, other):
        return GElem(self.mat @ other.mat, self.scale * other.scale)

    def inverse(self, sp):
        """``M^{-1} = S1^{-1} M^tr S1 / scale``."""
        inv = sp.S1_inv @ self.mat.T @ sp.S1.astype(object)
        inv = np.vectorize(lambda x: as_rational(Fraction(x) / self.scale),
                           otypes=[object])(inv)
        return GElem(inv, Fraction(1, 1) / self.scale)

    def __eq__(self, other):
        return (isinstance(other, GElem) and self.scale == other.scale
                and self.mat.shape == other.mat.shape and bool((self.mat == other.mat).all()))

    def __hash__(self):
        return hash((self.scale, tuple(self.mat.ravel())))

    def __repr__(self):
        return f"GElem(scale={self.scale}, size={self.size})"

    def blocks(self):
        """``(alpha, a, beta, b, K, c, gamma, d, delta)`` of the 3x3 block layout."""
        M = self.mat
        return (M[0, 0], M[0, 1:-1], M[0, -1], M[1:-1, 0], M[1:-1, 1:-1],
                M[1:-1, -1], M[-1, 0], M[-1, 1:-1], M[-1, -1])

    def to_json(self):
        return {"scale": self.scale,
                "rows": [[fmt_rat(x) for x in row] for row in self.mat]}

    @classmethod
    def from_json(cls, data):
        return cls([[parse_rat(x) for x in row] for row in data["rows"]], data["scale"])


def is_similitude(sp, M, r=1):
    """``S1[M] == r * S1`` exactly."""
    M = M.mat if isinstance(M, GElem) else np.asarray(M, dtype=object)
    if M.shape != sp.S1.shape:
        return False
    S1 = sp.S1.astype(object)
    return bool((M.T @ S1 @ M == r * S1).all())


def rank_mod(M, q):
    """Rank of an integer matrix over ``Z/qZ`` (``q`` prime)."""
    A = [[int(x) % q for x in row] for row in np.asarray(M, dtype=object)]
    rank, rows, cols = 0, len(A), len(A[0]) if A else 0
    for c in range(cols):
        piv = next((r for r in range(rank, rows) if A[r][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = pow(A[rank][c], -1, q)
        A[rank] = [(x * inv) % q for x in A[rank]]
        for r in range(rows):
            if r != rank and A[r][c]:
                f = A[r][c]
                A[r] = [(x - f * y) % q for x, y in zip(A[r], A[rank])]
        rank += 1
    return rank


def base_point(n):
    """``w0 = (i, 0, i)`` as an exact point."""
    return [QQ_I(0, 1)] + [QQ_I(0)] * n + [QQ_I(0, 1)]


def _S0_form(sp, x, y):
    S = sp.S
    n = sp.n
    mid = x[1:-1]
    acc = x[0] * y[-1] + x[-1] * y[0]
    for i in range(n):
        if mid[i]:
            t = 0
            for j in range(n):
                if S[i, j]:
                    t = t + int(S[i, j]) * y[1 + j]
            acc = acc - mid[i] * t
    return acc


def _in_HS(sp, w):
    """Exact or floating membership test for the half-space component."""
    if isinstance(w, np.ndarray) and w.dtype.kind == "c":
        v = w.imag
        return v[0] > 0 and v[-1] > 0 and float(v @ sp.S0 @ v) > 0
    v = [Fraction(int(x.y.numerator), int(x.y.denominator)) for x in w]
    return v[0] > 0 and v[-1] > 0 and _S0_form(sp, v, v) > 0


def act(sp, M, w):
    """``(M<w>, M{w})`` for the block matrix ``M``.

    ``M<w> = (-S0[w] b / 2 + K w + c) / M{w}`` and
    ``M{w} = -gamma S0[w] / 2 + d^tr w + delta``.  Works with the raw matrix,
    whatever its scale.  Exact when ``w`` holds ``QQ_I`` elements.
    """
    alpha, a, beta, b, K, c, gamma, d, delta = (M if isinstance(M, GElem) else GElem(M)).blocks()
    if isinstance(w, np.ndarray) and w.dtype.kind == "c":
        Kf = K.astype(np.float64)
        bf, cf, df = b.astype(np.float64), c.astype(np.float64), d.astype(np.float64)
        q = w @ sp.S0 @ w
        j = -float(gamma) / 2 * q + df @ w + float(delta)
        if abs(j) == 0:
            raise SingularCocycle("M{w} vanishes")
        return (-q / 2 * bf + Kf @ w + cf) / j, j
    dom = QQ_I
    cv = lambda x: dom.convert(x) if not isinstance(x, Fraction) else \
        dom.convert(x.numerator) / dom.convert(x.denominator)
    q = _S0_form(sp, w, w)
    j = cv(-Fraction(gamma) / 2) * q + sum((cv(x) * y for x, y in zip(d, w) if x), dom(0)) + cv(delta)
    if j == 0:
        raise SingularCocycle("M{w} vanishes")
    half = dom.convert(1) / dom.convert(2)
    out = []
    for i in range(len(w)):
        acc = -half * q * cv(b[i]) + cv(c[i])
        for jj in range(len(w)):
            if K[i, jj]:
                acc = acc + cv(K[i, jj]) * w[jj]
        out.append(acc / j)
    return out, j


def in_SO_plus(sp, M):
    """``det M = 1`` and ``M`` maps the base point into the half-space."""
    M = M if isinstance(M, GElem) else GElem(M)
    if M.scale != 1 or not is_similitude(sp, M.mat, 1):
        return False
    if exact_det(M.mat) != 1:
        return False
    try:
        image, _ = act(sp, M, base_point(sp.n))
    except SingularCocycle as exc:
        raise AssertionError("real similitude is singular at the base point") from exc
    return _in_HS(sp, image)


def in_discriminant_kernel(sp, M):
    """``M`` in ``SO+`` and ``(M - I) S1^{-1}`` integral."""
    M = M if isinstance(M, GElem) else GElem(M)
    if not in_SO_plus(sp, M):
        return False
    D = (M.mat - np.eye(M.size, dtype=int).astype(object)) @ sp.S1_inv
    return all(Fraction(x).denominator == 1 for x in D.ravel())


# -- generators ---------------------------------------------------------------

_H = np.array([[-1, 0], [0, 1]], dtype=object)


def _check_sl2(U):
    U = _as_obj(U)
    if U.shape != (2, 2) or U[0, 0] * U[1, 1] - U[0, 1] * U[1, 0] != 1:
        raise ValueError("expected a 2x2 matrix of determinant 1")
    return U


def embed_down(U, n):
    """``diag(H U H, I_n, U)``."""
    U = _check_sl2(U)
    M = np.eye(n + 4, dtype=int).astype(object)
    M[:2, :2] = _H @ U @ _H
    M[-2:, -2:] = U
    return GElem(M)


def embed_up(U, n):
    """``[[alpha I2, 0, beta H], [0, I_n, 0], [gamma H, 0, delta I2]]``."""
    U = _check_sl2(U)
    (al, be), (ga, de) = U
    M = np.eye(n + 4, dtype=int).astype(object)
    M[:2, :2] = al * np.eye(2, dtype=int)
    M[:2, -2:] = be * _H
    M[-2:, :2] = ga * _H
    M[-2:, -2:] = de * np.eye(2, dtype=int)
    return GElem(M)


def translation(sp, lam, lower=False):
    """``M_lam`` (upper) or ``M~_lam`` (lower) for ``lam`` in ``Z^{n+2}``."""
    lam = np.array([as_rational(x) for x in lam], dtype=object)
    if len(lam) != sp.n + 2:
        raise ValueError("translation vector has the wrong length")
    S0 = sp.S0.astype(object)
    row = -(lam @ S0)
    corner = -as_rational(Fraction(lam @ S0 @ lam, 2))
    M = np.eye(sp.n + 4, dtype=int).astype(object)
    if lower:
        M[1:-1, 0] = lam
        M[-1, 0] = corner
        M[-1, 1:-1] = row
    else:
        M[0, 1:-1] = row
        M[0, -1] = corner
        M[1:-1, -1] = lam
    return GElem(M)


def rotation(sp, K):
    """``R_K = diag(1, K, 1)`` for ``K`` with ``S0[K] = S0``."""
    K = _as_obj(K)
    S0 = sp.S0.astype(object)
    if K.shape != S0.shape or not (K.T @ S0 @ K == S0).all():
        raise ValueError("rotation: K does not preserve S0")
    M = np.eye(sp.n + 4, dtype=int).astype(object)
    M[1:-1, 1:-1] = K
    return GElem(M)


def block_k_mu(S, mu):
    """The ``(n+2)``-square block ``K_mu``."""
    S = np.asarray(S, dtype=object)
    mu = np.array([as_rational(x) for x in mu], dtype=object)
    n = len(mu)
    K = np.eye(n + 2, dtype=int).astype(object)
    K[0, 1:-1] = mu @ S
    K[0, -1] = as_rational(Fraction(mu @ S @ mu, 2))
    K[1:-1, -1] = mu
    return K


def block_k_hat(n):
    K = np.eye(n + 2, dtype=int).astype(object)
    K[0, 0] = K[-1, -1] = 0
    K[0, -1] = K[-1, 0] = 1
    return K


def block_k_tilde_mu(S, mu):
    S = np.asarray(S, dtype=object)
    mu = np.array([as_rational(x) for x in mu], dtype=object)
    n = len(mu)
    K = np.eye(n + 2, dtype=int).astype(object)
    K[1:-1, 0] = mu
    K[-1, 0] = as_rational(Fraction(mu @ S @ mu, 2))
    K[-1, 1:-1] = mu @ S
    return K


def k_mu(sp, mu):
    return rotation(sp, block_k_mu(sp.S, mu))


def k_tilde_mu(sp, mu):
    return rotation(sp, block_k_tilde_mu(sp.S, mu))


def k_hat(sp):
    """``R_{K^}``; a similitude of determinant -1."""
    M = np.eye(sp.n + 4, dtype=int).astype(object)
    M[1:-1, 1:-1] = block_k_hat(sp.n)
    return GElem(M)


class HPoint:
    """A point ``w = u + i v`` of the half-space (floating)."""

    __slots__ = ("w",)

    def __init__(self, w, sp=None):
        self.w = np.asarray(w, dtype=np.complex128)
        if sp is not None and not _in_HS(sp, self.w):
            raise ValueError("point is not in the half-space")

    @property
    def tau(self):
        return self.w[0]

    @property
    def z(self):
        return self.w[1:-1]

    @property
    def tau_prime(self):
        return self.w[-1]


def random_point(sp, rng, height=1.0):
    """A random point of the half-space with ``Im tau, Im tau'`` near ``height``."""
    n = sp.n
    while True:
        u = rng.uniform(-0.5, 0.5, n + 2)
        v = np.empty(n + 2)
        v[0], v[-1] = height * rng.uniform(1.0, 1.5, 2)
        v[1:-1] = rng.uniform(-0.1, 0.1, n) * height / max(1, n)
        if v @ sp.S0 @ v > 0:
            return u + 1j * v


_SL2 = [np.array(U, dtype=object) for U in
        ([[0, -1], [1, 0]], [[0, 1], [-1, 0]], [[1, 1], [0, 1]], [[1, -1], [0, 1]],
         [[1, 0], [1, 1]], [[1, 0], [-1, 1]])]


def random_generator(sp, rng):
    """A random standard generator: an embedded ``SL2`` matrix, a translation or a rotation."""
    n = sp.n
    kind = int(rng.integers(6))
    if kind < 2:
        U = _SL2[int(rng.integers(len(_SL2)))]
        return embed_down(U, n) if kind == 0 else embed_up(U, n)
    if kind < 4:
        lam = [int(x) for x in rng.integers(-1, 2, n + 2)]
        return translation(sp, lam, lower=kind == 3)
    mu = [int(x) for x in rng.integers(-1, 2, n)]
    if kind == 4:
        return k_mu(sp, mu)
    return k_tilde_mu(sp, mu) if rng.random() < 0.5 else k_hat(sp)


def random_word(sp, rng, max_length=4):
    """A list of 1 to ``max_length`` random generators."""
    return [random_generator(sp, rng) for _ in range(int(rng.integers(1, max_length + 1)))]

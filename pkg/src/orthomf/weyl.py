"""Weyl group of a simply-laced root lattice given in a simple-root basis.

When the Gram matrix ``S`` is an irreducible ADE Cartan matrix, the basis
vectors are simple roots and the reflections ``s_i(x) = x - (Sx)_i e_i``
generate the Weyl group ``W``.  Every ``W``-orbit has a unique dominant
member (``Sx >= 0``), and every orbit of the affine group ``W ⋉ bZ^n`` has
a unique member in the scaled fundamental alcove.  Both are used to key
Fourier coefficients by orbit instead of by vector.
"""

from itertools import combinations
from math import factorial

import numpy as np

__all__ = ["Weyl", "weyl_from_gram"]

_E_ORDERS = {6: 51840, 7: 2903040, 8: 696729600}


def _component_order(nodes, adj):
    """Order of the Weyl group of one connected simply-laced Dynkin diagram."""
    r = len(nodes)
    deg = {v: sum(1 for u in adj[v] if u in nodes) for v in nodes}
    branch = [v for v in nodes if deg[v] == 3]
    if not branch:
        return factorial(r + 1)  # A_r
    (b,) = branch
    arms = []
    for start in adj[b]:
        if start not in nodes:
            continue
        length, prev, cur = 1, b, start
        while True:
            nxt = [u for u in adj[cur] if u in nodes and u != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[:2] == [1, 1]:
        return 2 ** (r - 1) * factorial(r)  # D_r
    if arms[0] == 1 and arms[1] == 2 and r in _E_ORDERS:
        return _E_ORDERS[r]
    raise ValueError(f"not a Dynkin diagram of finite type (arms {arms})")


def _coxeter_order(nodes, adj):
    nodes = set(nodes)
    order, seen = 1, set()
    for v in sorted(nodes):
        if v in seen:
            continue
        comp, stack = set(), [v]
        while stack:
            u = stack.pop()
            if u in comp:
                continue
            comp.add(u)
            stack.extend(w for w in adj[u] if w in nodes and w not in comp)
        seen |= comp
        order *= _component_order(comp, adj)
    return order


class Weyl:
    """Weyl group data for an irreducible ADE Cartan matrix ``S``."""

    def __init__(self, S):
        self.S = np.asarray(S, dtype=np.int64)
        self.n = self.S.shape[0]
        self.adj = {i: [j for j in range(self.n) if j != i and self.S[i, j] != 0]
                    for i in range(self.n)}
        self.order = _coxeter_order(range(self.n), self.adj)
        self.highest_root = self._highest_root()
        self._S_theta = self.S @ self.highest_root

    def _highest_root(self):
        # The highest root is the unique dominant root; climb from any root.
        from .quadform import short_vectors

        roots = short_vectors(self.S, 1)
        roots = roots[(np.einsum("ij,jk,ik->i", roots, self.S, roots) == 2)]
        dom = np.unique(self.dominant(roots), axis=0)
        if len(dom) != 1:
            raise ValueError("root system is not irreducible")
        return dom[0]

    def dominant(self, X):
        """Map each row of ``X`` to the dominant member of its ``W``-orbit."""
        X = np.array(X, copy=True)
        if X.ndim == 1:
            return self.dominant(X[None, :])[0]
        active = np.ones(len(X), dtype=bool)
        while active.any():
            idx = np.nonzero(active)[0]
            Y = X[idx]
            changed = np.zeros(len(idx), dtype=bool)
            for i in range(self.n):
                g = Y @ self.S[:, i]
                neg = g < 0
                if neg.any():
                    Y[neg, i] -= g[neg]
                    changed |= neg
            X[idx] = Y
            active[idx] = changed
        return X

    def alcove(self, X, levels):
        """Reduce rows of ``X`` modulo ``W ⋉ level * Z^n`` into the closed alcove.

        ``levels`` is a positive scalar or one level per row.  The result is
        dominant and satisfies ``(theta, x) <= level`` for the highest root
        ``theta``; it is the unique such point of the orbit.
        """
        X = self.dominant(X)
        levels = np.broadcast_to(np.asarray(levels), (len(X),))
        for _ in range(10_000):
            h = X @ self._S_theta
            over = h > levels
            if not over.any():
                return X
            shift = (h[over] - levels[over])[:, None] * self.highest_root[None, :]
            X[over] = self.dominant(X[over] - shift)
        raise RuntimeError("alcove reduction did not terminate")

    def stabilizer_order(self, c):
        """Order of the stabilizer of a dominant vector with ``c = S x``."""
        zero = [i for i in range(self.n) if c[i] == 0]
        return _coxeter_order(zero, self.adj) if zero else 1

    def orbit_size(self, x):
        x = np.asarray(x)
        c = x @ self.S
        if (c < 0).any():
            raise ValueError("orbit_size expects a dominant vector")
        return self.order // self.stabilizer_order(c)


def weyl_from_gram(S):
    """Return :class:`Weyl` when ``S`` is an irreducible ADE Cartan matrix, else ``None``."""
    S = np.asarray(S, dtype=np.int64)
    n = S.shape[0]
    if not (S.diagonal() == 2).all():
        return None
    off = S[~np.eye(n, dtype=bool)]
    if not np.isin(off, (0, -1)).all():
        return None
    # tree check: a connected simply-laced finite-type diagram has n - 1 edges
    edges = sum(1 for i, j in combinations(range(n), 2) if S[i, j])
    if edges != n - 1:
        return None
    try:
        return Weyl(S)
    except ValueError:
        return None

"""Truncated Fourier expansions on the orthogonal half-space.

A :class:`FourierSeries` holds exact coefficients ``alpha(lam)`` for the cone
indices ``lam = (m, mu, l)`` with ``0 <= m, l <= B`` (the *window*).  Looking
up an in-dual, in-cone index outside the window raises :class:`OutOfRange`
unless the series says how to reach it:

* ``finite=True``: the series is an exact finite sum, so everything outside
  the window is zero.  Used by the floating-point oracles.
* ``invariant=True``: the coefficients are invariant under the full integral
  orthogonal group of the cone.  Maass-space forms have this property and
  the Hecke operators preserve it.  For the E8 lattice that group is the
  reflection group of the E10 diagram, so every index is reduced to the
  fundamental chamber and coefficients are stored once per orbit, keyed by
  the chamber representative.  Out-of-window indices whose orbit meets the
  window are then answered exactly.

:class:`EllSeries` is a truncated elliptic ``q``-expansion.
"""

import csv
import io
import json
from fractions import Fraction

import numpy as np

from .exact import as_rational, bernoulli, divisors, fmt_rat, parse_rat, sigma
from .quadform import (
    dual_short_vectors,
    enumerate_cone,
    enumerate_cone_orbits,
    eps,
    in_cone,
    in_dual,
    norm,
    split_index,
)

__all__ = [
    "OutOfRange",
    "EllSeries",
    "FourierSeries",
    "ChamberReducer",
    "coeff",
    "multiply",
    "phi",
    "is_cusp",
    "star",
    "maass_coefficient",
    "maass_extend",
    "maass_defect",
    "p_maass_defect",
    "defect_iii",
    "eval_numeric",
    "slash_defect_numeric",
]


class OutOfRange(LookupError):
    """A coefficient was requested outside the region the series can answer."""


# -- elliptic expansions ------------------------------------------------------

class EllSeries:
    """``c(0) + c(1) q + ... + c(N) q^N`` with exact coefficients and a weight."""

    __slots__ = ("weight", "coeffs")

    def __init__(self, weight, coeffs):
        self.weight = int(weight)
        self.coeffs = tuple(as_rational(c) for c in coeffs)

    @property
    def N(self):
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        i = Fraction(i)
        if i.denominator != 1 or i < 0:
            return 0
        i = int(i)
        if i > self.N:
            raise OutOfRange(f"elliptic coefficient c({i}) beyond stored length {self.N}")
        return self.coeffs[i]

    def truncate(self, N):
        if N > self.N:
            raise OutOfRange(f"cannot extend an expansion of length {self.N} to {N}")
        return EllSeries(self.weight, self.coeffs[: N + 1])

    def _common(self, other):
        N = min(self.N, other.N)
        return self.coeffs[: N + 1], other.coeffs[: N + 1]

    def __add__(self, other):
        a, b = self._common(other)
        return EllSeries(self.weight, [x + y for x, y in zip(a, b)])

    def __sub__(self, other):
        a, b = self._common(other)
        return EllSeries(self.weight, [x - y for x, y in zip(a, b)])

    def scale(self, c):
        c = Fraction(c)
        return EllSeries(self.weight, [c * x for x in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, EllSeries):
            return self.scale(other)
        a, b = self._common(other)
        out = [sum(a[i] * b[j - i] for i in range(j + 1)) for j in range(len(a))]
        return EllSeries(self.weight + other.weight, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return (isinstance(other, EllSeries) and self.weight == other.weight
                and self.coeffs == other.coeffs)

    def __repr__(self):
        head = ", ".join(fmt_rat(c) for c in self.coeffs[:6])
        more = ", ..." if self.N > 5 else ""
        return f"EllSeries(weight={self.weight}, [{head}{more}], N={self.N})"

    def to_json(self):
        return {"weight": self.weight, "coeffs": [fmt_rat(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data):
        return cls(data["weight"], [parse_rat(c) for c in data["coeffs"]])


# -- E10 chamber reduction ----------------------------------------------------

class ChamberReducer:
    """Reduce cone indices of ``U + E8(-1)`` to the fundamental E10 chamber.

    The simple roots are the E8 simple roots ``(0, e_i, 0)``, the affine root
    ``(0, -theta, 1)`` and ``(1, 0, -1)``; each has ``S0``-norm ``-2`` and the
    reflection in ``r`` is ``lam -> lam + (lam, r) r``.  A cone index lies in
    the chamber iff ``S mu <= 0``, ``m + mu^tr S theta >= 0`` and ``l >= m``.
    Reflecting in any simple root with negative pairing terminates in the
    unique chamber point of the orbit.
    """

    def __init__(self, sp):
        if not sp.unimodular or sp.weyl is None:
            raise ValueError("chamber reduction needs the E8 Cartan matrix")
        self.W = sp.weyl
        self.theta = self.W.highest_root.astype(np.int64)
        self.S_theta = sp.S @ self.theta

    def reduce(self, L, max_iter=100_000):
        L = np.array(L, dtype=np.int64, copy=True)
        if L.ndim == 1:
            return self.reduce(L[None, :], max_iter)[0]
        active = np.arange(len(L))
        for _ in range(max_iter):
            if not len(active):
                return L
            X = L[active]
            X[:, 1:-1] = -self.W.dominant(-X[:, 1:-1])
            p0 = X[:, 0] + X[:, 1:-1] @ self.S_theta
            neg0 = p0 < 0
            X[neg0, 1:-1] -= p0[neg0, None] * self.theta[None, :]
            X[neg0, -1] += p0[neg0]
            swap = X[:, -1] < X[:, 0]
            X[swap, 0], X[swap, -1] = X[swap, -1].copy(), X[swap, 0].copy()
            L[active] = X
            active = active[neg0 | swap]
        raise RuntimeError("chamber reduction did not terminate (index outside the cone?)")


_REDUCERS = {}
_WINDOWS = {}


def _reducer(sp):
    key = id(sp)
    if key not in _REDUCERS:
        _REDUCERS[key] = (sp, ChamberReducer(sp))
    return _REDUCERS[key][1]


def _chamber_window(sp, B):
    """``{chamber key: in-window witness}`` for the window ``m, l <= B``."""
    ck = (id(sp), B)
    if ck not in _WINDOWS:
        reps = [lam for lam, _ in enumerate_cone_orbits(sp, B)]
        red = _reducer(sp)
        keys = red.reduce(np.array(reps, dtype=np.int64)) if reps else []
        out = {}
        for lam, key in zip(reps, keys):
            out.setdefault(tuple(int(x) for x in key), lam)
        _WINDOWS[ck] = (sp, out)
    return _WINDOWS[ck][1]


def _as_index(lam):
    return tuple(as_rational(x) for x in lam)


# -- Fourier series -----------------------------------------------------------

class FourierSeries:
    """Exact truncated Fourier expansion of weight ``k`` on ``space``.

    Build instances with :meth:`from_function` or :meth:`from_mapping`.
    ``len(series)`` is the number of stored keys (orbits for chamber-keyed
    series, indices otherwise).
    """

    def __init__(self, space, k, B, values, *, invariant=False, finite=False, _witness=None):
        self.space = space
        self.k = int(k)
        self.B = int(B)
        self.invariant = bool(invariant)
        self.finite = bool(finite)
        self.chamber = self.invariant and space.unimodular and space.weyl is not None
        self._vals = dict(values)
        self._wit = _witness if _witness is not None else {key: key for key in self._vals}

    # construction
    @staticmethod
    def window(space, B, invariant=False):
        """``{key: witness}`` for the window; keys are chamber points or indices."""
        if B < 0:
            raise ValueError("truncation bound must be >= 0")
        if invariant and space.unimodular and space.weyl is not None:
            return dict(_chamber_window(space, B))
        return {lam: lam for lam in enumerate_cone(space, B)}

    @classmethod
    def from_function(cls, space, k, B, fn, *, invariant=False, finite=False):
        """Evaluate ``fn(lam)`` once per stored key (at its in-window witness)."""
        wit = cls.window(space, B, invariant)
        vals = {key: as_rational(fn(lam)) for key, lam in wit.items()}
        return cls(space, k, B, vals, invariant=invariant, finite=finite, _witness=wit)

    @classmethod
    def from_mapping(cls, space, k, B, mapping, *, invariant=False, finite=False):
        """Series with the given coefficients; unlisted window indices are 0.

        Keys outside the cone or the window are rejected.  For chamber-keyed
        series the mapping must be constant on orbits.
        """
        mapping = {_as_index(lam): as_rational(v) for lam, v in mapping.items()}
        for lam in mapping:
            if len(lam) != space.n + 2 or not in_dual(space, lam) or not in_cone(space, lam):
                raise ValueError(f"index {lam} is not a cone index of the dual lattice")
            if lam[0] > B or lam[-1] > B:
                raise ValueError(f"index {lam} lies outside the window B = {B}")
        wit = cls.window(space, B, invariant)
        series = cls(space, k, B, {key: 0 for key in wit}, invariant=invariant,
                     finite=finite, _witness=wit)
        for lam, v in mapping.items():
            key = series.key_of(lam)
            if series.chamber and key in mapping and mapping[key] != v:
                raise ValueError(f"mapping is not constant on the orbit of {lam}")
            series._vals[key] = v
        return series

    @classmethod
    def zero(cls, space, k, B, **flags):
        return cls.from_function(space, k, B, lambda lam: 0, **flags)

    @classmethod
    def constant(cls, space, B, value=1, **flags):
        """The constant function ``value`` as a weight 0 series."""
        flags.setdefault("invariant", True)
        flags.setdefault("finite", True)
        return cls.from_function(space, 0, B, lambda lam: value if not any(lam) else 0, **flags)

    def _like(self, values, k=None, B=None, **flags):
        B = self.B if B is None else B
        wit = self._wit if B == self.B else self.window(self.space, B, self.invariant)
        return FourierSeries(self.space, self.k if k is None else k, B, values,
                             invariant=flags.get("invariant", self.invariant),
                             finite=flags.get("finite", self.finite), _witness=wit)

    # keys and lookups
    def key_of(self, lam):
        """Storage key of ``lam``: its chamber point for orbit-keyed series."""
        if self.chamber:
            if not in_cone(self.space, lam):
                raise ValueError(f"{tuple(lam)} is not a cone index")
            return tuple(int(x) for x in _reducer(self.space).reduce(np.array(lam, dtype=np.int64)))
        return _as_index(lam)

    def keys(self):
        return sorted(self._vals)

    def items(self):
        """``(witness, value)`` pairs sorted by witness."""
        return sorted((self._wit[key], v) for key, v in self._vals.items())

    def witness(self, key):
        return self._wit[key]

    def __len__(self):
        return len(self._vals)

    def coeff(self, lam):
        lam = _as_index(lam)
        sp = self.space
        if len(lam) != sp.n + 2:
            raise ValueError(f"index length {len(lam)} != {sp.n + 2}")
        if not in_dual(sp, lam) or not in_cone(sp, lam):
            return 0
        in_window = lam[0] <= self.B and lam[-1] <= self.B
        key = self.key_of(lam)
        if key in self._vals:
            return self._vals[key]
        if in_window:
            raise AssertionError(f"window index {lam} has no stored key")
        if self.finite:
            return 0
        raise OutOfRange(f"coefficient at {lam} is outside the window B = {self.B}")

    __getitem__ = coeff

    def lookup_many(self, L, denom=1):
        """Coefficients at the rows of ``L / denom`` (an integer or object array)."""
        L = np.asarray(L)
        if L.ndim != 2 or not len(L):
            return [self.coeff(lam) for lam in L.reshape(-1, self.space.n + 2)] if L.size else []
        if L.dtype == object or not self.chamber:
            return [self.coeff([Fraction(x) / denom for x in row]) for row in L]
        out = np.zeros(len(L), dtype=object)
        div = (L % denom == 0).all(axis=1)
        X = L[div] // denom
        S = self.space.S
        mu = X[:, 1:-1]
        nrm = 2 * X[:, 0] * X[:, -1] - np.einsum("ij,jk,ik->i", mu, S, mu)
        cone = (X[:, 0] >= 0) & (X[:, -1] >= 0) & (nrm >= 0)
        idx = np.nonzero(div)[0][cone]
        if len(idx):
            keys = _reducer(self.space).reduce(X[cone])
            uniq, inv = np.unique(keys, axis=0, return_inverse=True)
            vals = []
            for row in uniq:
                key = tuple(int(x) for x in row)
                if key in self._vals:
                    vals.append(self._vals[key])
                elif self.finite:
                    vals.append(0)
                else:
                    raise OutOfRange(f"coefficient at chamber point {key} not available "
                                     f"(window B = {self.B})")
            out[idx] = np.array(vals, dtype=object)[np.ravel(inv)]
        return list(out)

    # algebra
    def _check_compatible(self, other):
        if other.space is not self.space and other.space.gram_hash != self.space.gram_hash:
            raise ValueError("series live on different spaces")

    def _binary(self, other, op):
        self._check_compatible(other)
        if self.k != other.k:
            raise ValueError("adding series of different weights")
        B = min(self.B, other.B)
        inv = self.invariant and other.invariant
        wit = self.window(self.space, B, inv)
        vals = {key: op(self.coeff(lam), other.coeff(lam)) for key, lam in wit.items()}
        return FourierSeries(self.space, self.k, B, vals, invariant=inv,
                             finite=self.finite and other.finite, _witness=wit)

    def __add__(self, other):
        return self._binary(other, lambda x, y: as_rational(x + y))

    def __sub__(self, other):
        return self._binary(other, lambda x, y: as_rational(x - y))

    def scale(self, c):
        c = Fraction(c)
        return self._like({key: as_rational(c * v) for key, v in self._vals.items()})

    def restrict(self, B):
        """The same series on the smaller window ``m, l <= B``."""
        if B > self.B:
            raise OutOfRange(f"cannot restrict B = {self.B} to the larger B = {B}")
        if B == self.B:
            return self
        wit = self.window(self.space, B, self.invariant)
        vals = {key: self.coeff(lam) for key, lam in wit.items()}
        return FourierSeries(self.space, self.k, B, vals, invariant=self.invariant,
                             finite=False, _witness=wit)

    def with_flags(self, **flags):
        """Reinterpret the stored data with different lookup flags."""
        if flags.get("invariant", self.invariant) != self.invariant and self.chamber:
            raise ValueError("cannot drop invariance of a chamber-keyed series")
        if flags.get("invariant", self.invariant) and not self.invariant:
            return FourierSeries.from_mapping(self.space, self.k, self.B,
                                              dict(self.items()), **{
                                                  "invariant": True,
                                                  "finite": flags.get("finite", self.finite)})
        return self._like(dict(self._vals), **flags)

    def __eq__(self, other):
        if not isinstance(other, FourierSeries):
            return NotImplemented
        return (self.space.gram_hash == other.space.gram_hash and self.k == other.k
                and self.B == other.B and self.chamber == other.chamber
                and self._vals == other._vals)

    def differences(self, other):
        """Witnesses where two series on the same window disagree."""
        if self.B != other.B:
            raise ValueError("windows differ")
        return [lam for lam, v in self.items() if other.coeff(lam) != v]

    def expand(self):
        """``{index: value}`` over the full window (every index, not per orbit)."""
        if not self.chamber:
            return {self._wit[key]: v for key, v in self._vals.items()}
        lams = enumerate_cone(self.space, self.B)
        vals = self.lookup_many(np.array(lams, dtype=np.int64))
        return dict(zip(lams, vals))

    def __repr__(self):
        flags = [f for f in ("invariant", "finite") if getattr(self, f)]
        return (f"FourierSeries(k={self.k}, B={self.B}, keys={len(self)}, "
                f"space={self.space!r}{', ' + ', '.join(flags) if flags else ''})")

    # serialization
    def to_json(self):
        data = {"k": self.k, "B": self.B, "space": self.space.gram_hash,
                "coeffs": [{"lambda": [fmt_rat(x) if isinstance(x, Fraction) else x for x in lam],
                            "value": fmt_rat(v)} for lam, v in self.items()]}
        if self.invariant:
            data["invariant"] = True
        if self.finite:
            data["finite"] = True
        return data

    def dumps(self):
        return json.dumps(self.to_json(), separators=(",", ":"), sort_keys=False)

    @classmethod
    def from_json(cls, space, data):
        if data["space"] != space.gram_hash:
            raise ValueError("series was written for a different Gram matrix")
        mapping = {tuple(parse_rat(x) if isinstance(x, str) else x for x in c["lambda"]):
                   parse_rat(c["value"]) for c in data["coeffs"]}
        return cls.from_mapping(space, data["k"], data["B"], mapping,
                                invariant=data.get("invariant", False),
                                finite=data.get("finite", False))

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        n = self.space.n
        w.writerow(["m"] + [f"mu{i + 1}" for i in range(n)] + ["l", "norm", "eps", "value"])
        for lam, v in self.items():
            w.writerow([fmt_rat(x) for x in lam]
                       + [fmt_rat(norm(self.space, lam)), eps(self.space, lam), fmt_rat(v)])
        return buf.getvalue()


def coeff(f, lam):
    """``alpha_f(lam)``; zero off the dual lattice or the cone."""
    return f.coeff(lam)


# -- products -----------------------------------------------------------------

def _chamber_multiply(f, g, B):
    sp = f.space
    red = _reducer(sp)
    X, norms = dual_short_vectors(sp, B * B)
    n = sp.n
    # sorted lookup of vectors by an integer encoding
    lo = int(X.min()) if len(X) else 0
    span = int(X.max()) - lo + 1 if len(X) else 1
    weights = span ** np.arange(n, dtype=np.int64)[::-1]
    codes = (X - lo) @ weights
    order = np.argsort(codes)
    codes_sorted = codes[order]

    # chamber ids of (a, x, b) for every pair (a, b) and x with S[x] <= 2ab
    tables, key_ids, key_list = {}, {}, []
    for a in range(B + 1):
        for b in range(B + 1):
            cnt = int(np.searchsorted(norms, 2 * a * b, side="right"))
            L = np.empty((cnt, n + 2), dtype=np.int64)
            L[:, 0], L[:, -1], L[:, 1:-1] = a, b, X[:cnt]
            keys = red.reduce(L) if cnt else L
            uniq, inv = np.unique(keys, axis=0, return_inverse=True)
            remap = np.empty(len(uniq), dtype=np.int64)
            for i, row in enumerate(uniq):
                t = tuple(int(v) for v in row)
                if t not in key_ids:
                    key_ids[t] = len(key_list)
                    key_list.append(t)
                remap[i] = key_ids[t]
            tables[a, b] = remap[np.ravel(inv)]

    def values(series):
        out = []
        for key in key_list:
            if key in series._vals:
                out.append(series._vals[key])
            else:
                out.append(series.coeff(key))
        return out

    vf, vg = values(f), values(g)
    wit = FourierSeries.window(sp, B, True)
    result = {}
    for key, lam in wit.items():
        m, mu, l = lam[0], np.array(lam[1:-1], dtype=np.int64), lam[-1]
        total = Fraction(0)
        for a in range(m + 1):
            for b in range(l + 1):
                ids_nu = tables[a, b]
                cand = X[: len(ids_nu)]
                D = mu[None, :] - cand
                rest = np.einsum("ij,jk,ik->i", D, sp.S, D)
                c, d = m - a, l - b
                ok = rest <= 2 * c * d
                if not ok.any():
                    continue
                pos = np.searchsorted(codes_sorted, (D[ok] - lo) @ weights)
                ids_rho = tables[c, d][order[pos]]
                pair = ids_nu[ok] * len(key_list) + ids_rho
                up, counts = np.unique(pair, return_counts=True)
                for pc, cnt in zip(up.tolist(), counts.tolist()):
                    i, j = divmod(pc, len(key_list))
                    if vf[i] and vg[j]:
                        total += cnt * Fraction(vf[i]) * vg[j]
        result[key] = as_rational(total)
    return FourierSeries(sp, f.k + g.k, B, result, invariant=True,
                         finite=f.finite and g.finite, _witness=wit)


def multiply(f, g):
    """Cauchy product ``alpha_fg(lam) = sum_{nu + rho = lam} alpha_f(nu) alpha_g(rho)``.

    Both summands range over the cone, so the sum is finite.  The result has
    weight ``k_f + k_g`` and window ``min(B_f, B_g)``.
    """
    f._check_compatible(g)
    sp = f.space
    B = min(f.B, g.B)
    if f.chamber and g.chamber:
        return _chamber_multiply(f, g, B)
    inv = f.invariant and g.invariant
    wit = FourierSeries.window(sp, B, inv)
    result = {}
    for key, lam in wit.items():
        m, mu, l = split_index(lam)
        X, norms = dual_short_vectors(sp, m * l)
        total = Fraction(0)
        for a in range(m + 1):
            for b in range(l + 1):
                for x, nx in zip(X, norms):
                    if nx > 2 * a * b:
                        break
                    nu = (a, *(as_rational(v) for v in x), b)
                    rho = tuple(as_rational(p - q) for p, q in zip(lam, nu))
                    if not in_cone(sp, rho):
                        continue
                    u = f.coeff(nu)
                    if u:
                        total += Fraction(u) * g.coeff(rho)
        result[key] = as_rational(total)
    return FourierSeries(sp, f.k + g.k, B, result, invariant=inv,
                         finite=f.finite and g.finite, _witness=wit)


# -- restriction maps -------------------------------------------------------------

def phi(f, u):
    """Coefficients ``c(l) = alpha_f(l u)`` along a primitive isotropic ``u >= 0``.

    Runs while the multiples stay answerable: up to ``l = B`` for
    chamber-keyed series (all primitive isotropic vectors are equivalent)
    and up to the window edge otherwise.
    """
    sp = f.space
    u = _as_index(u)
    if not any(u) or not in_dual(sp, u) or not in_cone(sp, u) or norm(sp, u) != 0:
        raise ValueError(f"{u} is not a nonzero isotropic cone vector of the dual lattice")
    if eps(sp, u) != 1:
        raise ValueError(f"{u} is not primitive: gcd(S0 u) = {eps(sp, u)}")
    if f.chamber:
        L = f.B
    else:
        top = max(u[0], u[-1])
        L = int(f.B // top) if top else f.B
    if f.chamber:
        return EllSeries(f.k, f.lookup_many(np.outer(np.arange(L + 1), np.array(u, dtype=np.int64))))
    return EllSeries(f.k, [f.coeff(tuple(l * x for x in u)) for l in range(L + 1)])


def is_cusp(f):
    """Every stored isotropic coefficient vanishes."""
    return all(v == 0 for lam, v in f.items() if norm(f.space, lam) == 0)


def star(f, N=None):
    """``c(l) = alpha_f((l, 0, 1))`` of weight ``k - n/2`` (needs ``det S = 1``).

    Without ``N`` the expansion runs as far as the series can answer, which
    for chamber-keyed series may exceed the window.
    """
    sp = f.space
    if not sp.unimodular:
        raise ValueError("the star map needs det S = 1")
    zero = (0,) * sp.n

    def c(l):
        return f.coeff((l, *zero, 1))

    if N is None:
        out = []
        l = 0
        while True:
            try:
                out.append(c(l))
            except OutOfRange:
                break
            l += 1
            if l > f.B and (f.finite or not f.chamber):
                break
            if l > 4 * f.B * f.B + 4:
                break
        return EllSeries(f.k - sp.n // 2, out)
    return EllSeries(f.k - sp.n // 2, [c(l) for l in range(N + 1)])


# -- Maass relations ------------------------------------------------------------

def maass_coefficient(sp, k, c, lam):
    """Coefficient at ``lam`` of the Maass-space series with star image ``c``."""
    lam = _as_index(lam)
    if not any(lam):
        return as_rational(-bernoulli(k) / (2 * k) * Fraction(c[0]))
    N = norm(sp, lam)
    e = eps(sp, lam)
    if N == 0:
        return as_rational(sigma(k - 1, e) * Fraction(c[0]))
    return as_rational(sum(d ** (k - 1) * Fraction(c[Fraction(N, 2 * d * d)]) for d in divisors(e)))


def maass_extend(sp, k, c, B):
    """The Maass-space series of weight ``k`` whose star image is ``c``.

    Needs ``det S = 1`` and ``c`` of weight ``k - n/2`` known up to
    ``q^(B*B)`` (the largest half-norm in the window).
    """
    if not sp.unimodular:
        raise ValueError("maass_extend needs det S = 1")
    if c.weight != k - sp.n // 2:
        raise ValueError(f"star image must have weight {k - sp.n // 2}, got {c.weight}")
    if c.N < B * B:
        raise OutOfRange(f"need c up to q^{B * B}, have q^{c.N}")
    return FourierSeries.from_function(sp, k, B, lambda lam: maass_coefficient(sp, k, c, lam),
                                       invariant=True)


def maass_defect(f, lam):
    """``alpha(lam) - sum_{d | eps(lam)} d^(k-1) alpha((1, mu/d, l m/d^2))``."""
    lam = _as_index(lam)
    if not any(lam):
        raise ValueError("the Maass relation is stated for lam != 0")
    m, mu, l = split_index(lam)
    total = Fraction(f.coeff(lam))
    for d in divisors(eps(f.space, lam)):
        gen = (1, *(Fraction(x) / d for x in mu), Fraction(l * m, d * d))
        total -= d ** (f.k - 1) * Fraction(f.coeff(gen))
    return as_rational(total)


def p_maass_defect(f, p, lam, r, variant="restricted"):
    """Left minus right side of the ``p``-Maass relation at ``lam`` and level ``r``.

    For ``lam = (p^r m, mu, l)`` with ``p`` not dividing ``m`` this is
    ``alpha(lam) - sum_j p^(j(k-1)) alpha((m, mu/p^j, p^(r-2j) l))``; for
    ``lam = (0, 0, p^r m)`` it is ``alpha(lam) - (sum_j p^(j(k-1))) alpha((0, 0, m))``.

    With ``variant="restricted"`` the ``j``-th term of the first line is kept
    only when ``p^j`` divides ``l``, i.e. when ``p^j`` divides ``eps(lam)``;
    the unrestricted sum (``variant="printed"``) is violated by Maass-space
    series, e.g. at ``(4, 0, 1)`` for ``p = 2``.
    """
    if variant not in ("restricted", "printed"):
        raise ValueError("variant must be 'restricted' or 'printed'")
    lam = _as_index(lam)
    M, mu, l = split_index(lam)
    k = f.k
    if M == 0 and not any(mu):
        if l % p ** r:
            raise ValueError(f"p^r = {p ** r} does not divide {l}")
        m = l // p ** r
        if m == 0 or m % p == 0:
            raise ValueError(f"{p} divides m = {m}")
        zero = (0,) * len(mu)
        factor = sum(p ** (j * (k - 1)) for j in range(r + 1))
        return as_rational(f.coeff(lam) - factor * Fraction(f.coeff((0, *zero, m))))
    if M % p ** r:
        raise ValueError(f"p^r = {p ** r} does not divide the first entry {M}")
    m = M // p ** r
    if m % p == 0:
        raise ValueError(f"{p} divides m = {m}")
    total = Fraction(f.coeff(lam))
    for j in range(r + 1):
        if variant == "restricted" and Fraction(l) / p ** j % 1:
            continue
        arg = (m, *(Fraction(x) / p ** j for x in mu), Fraction(l) * Fraction(p) ** (r - 2 * j))
        total -= p ** (j * (k - 1)) * Fraction(f.coeff(arg))
    return as_rational(total)


def defect_iii(f, p, lam):
    """``a(pm, mu, l) + p^(k-1) a(m/p, mu/p, l) - a(m, mu, pl) - p^(k-1) a(m, mu/p, l/p)``."""
    lam = _as_index(lam)
    m, mu, l = split_index(lam)
    pk = p ** (f.k - 1)
    mu_p = tuple(Fraction(x) / p for x in mu)
    lhs = Fraction(f.coeff((p * m, *mu, l))) + pk * Fraction(f.coeff((Fraction(m, p), *mu_p, l)))
    rhs = Fraction(f.coeff((m, *mu, p * l))) + pk * Fraction(f.coeff((m, *mu_p, Fraction(l, p))))
    return as_rational(lhs - rhs)


# -- floating evaluation -------------------------------------------------------------

def eval_numeric(f, w):
    """``sum alpha(lam) exp(2 pi i lam^tr S0 w)`` over the stored window."""
    w = np.asarray(w, dtype=np.complex128)
    terms = f.expand()
    lams = [lam for lam, v in terms.items() if v]
    if not lams:
        return 0j
    L = np.array([[float(x) for x in lam] for lam in lams])
    vals = np.array([float(terms[lam]) for lam in lams])
    phase = np.exp(2j * np.pi * (L @ f.space.S0 @ w))
    return complex(vals @ phase)


def slash_defect_numeric(f, M, w):
    """``|f(M<w>) M{w}^(-k) - f(w)|``."""
    from .orthogroup import act

    w = np.asarray(w, dtype=np.complex128)
    image, j = act(f.space, M, w)
    return abs(eval_numeric(f, image) * j ** (-f.k) - eval_numeric(f, w))

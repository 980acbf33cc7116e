"""The defining N-dimensional representation of gl(N) with XiSeries entries.

A :class:`SeriesMatrix` stores one exact numpy object array per power of
xi.  Rank-r tensors evaluate to N**r square matrices; leg 1 is the leftmost
Kronecker factor, so the flip of a rank-2 tensor is ``P M P`` with ``P`` the
swap permutation of C^N (x) C^N.
"""
from __future__ import annotations

import json

import numpy as np

from .reports import Report, timed
from .scalars import ONE, ZERO, XiSeries, format_rational, to_rational

__all__ = [
    "SeriesMatrix",
    "Fundamental",
    "fundamental",
    "evaluate_tensor",
    "flip_matrix",
    "matrix_checks",
    "export_r_matrix",
    "StabilizationError",
]


class StabilizationError(RuntimeError):
    """Exported entries differ between orders K and K+1 (increase K)."""


def _zeros(n):
    out = np.empty((n, n), dtype=object)
    out.fill(ZERO)
    return out


def _eye(n):
    out = _zeros(n)
    for i in range(n):
        out[i, i] = ONE
    return out


def _is_zero(a):
    return not any(x for x in a.flat)


class SeriesMatrix:
    """Square matrix over Q[xi]/(xi^{K+1})."""

    __slots__ = ("n", "order", "layers")

    def __init__(self, layers):
        self.layers = list(layers)
        self.order = len(self.layers) - 1
        self.n = self.layers[0].shape[0]

    @classmethod
    def zero(cls, n, order):
        return cls([_zeros(n) for _ in range(order + 1)])

    @classmethod
    def identity(cls, n, order):
        return cls([_eye(n)] + [_zeros(n) for _ in range(order)])

    @classmethod
    def constant(cls, array, order):
        a = np.asarray(array, dtype=object)
        a = np.vectorize(to_rational, otypes=[object])(a)
        return cls([a] + [_zeros(a.shape[0]) for _ in range(order)])

    def entry(self, i, j):
        return XiSeries._raw([l[i, j] for l in self.layers])

    def _check(self, other):
        if not isinstance(other, SeriesMatrix):
            raise TypeError("expected a SeriesMatrix")
        if other.n != self.n:
            raise ValueError(f"size {self.n} vs {other.n}")
        if other.order != self.order:
            raise ValueError(f"order {self.order} vs {other.order}")

    def __add__(self, other):
        self._check(other)
        return SeriesMatrix([a + b for a, b in zip(self.layers, other.layers)])

    def __sub__(self, other):
        self._check(other)
        return SeriesMatrix([a - b for a, b in zip(self.layers, other.layers)])

    def __neg__(self):
        return SeriesMatrix([-a for a in self.layers])

    def scale(self, s):
        if isinstance(s, XiSeries):
            out = [_zeros(self.n) for _ in range(self.order + 1)]
            for q, c in enumerate(s):
                if c:
                    for p in range(self.order + 1 - q):
                        out[p + q] = out[p + q] + self.layers[p] * c
            return SeriesMatrix(out)
        s = to_rational(s)
        return SeriesMatrix([a * s for a in self.layers])

    def __matmul__(self, other):
        self._check(other)
        K = self.order
        out = [_zeros(self.n) for _ in range(K + 1)]
        nz = [not _is_zero(b) for b in other.layers]
        for p, a in enumerate(self.layers):
            if _is_zero(a):
                continue
            for q in range(K + 1 - p):
                if nz[q]:
                    out[p + q] = out[p + q] + a.dot(other.layers[q])
        return SeriesMatrix(out)

    __mul__ = __matmul__

    def kron(self, other):
        """``self (x) other`` (self is the left Kronecker factor)."""
        K = self.order
        if other.order != K:
            raise ValueError("order mismatch")
        n = self.n * other.n
        out = [_zeros(n) for _ in range(K + 1)]
        for p, a in enumerate(self.layers):
            if _is_zero(a):
                continue
            for q in range(K + 1 - p):
                if not _is_zero(other.layers[q]):
                    out[p + q] = out[p + q] + np.kron(a, other.layers[q])
        return SeriesMatrix(out)

    def conjugate(self, P):
        """``P M P^{-1}`` for a permutation matrix given as an index array."""
        inv = np.argsort(P)
        return SeriesMatrix([a[np.ix_(inv, inv)] for a in self.layers])

    def is_zero(self):
        return all(_is_zero(a) for a in self.layers)

    def __eq__(self, other):
        if not isinstance(other, SeriesMatrix) or other.n != self.n or other.order != self.order:
            return False
        return (self - other).is_zero()

    __hash__ = None

    def at_zero(self):
        """The classical limit xi = 0."""
        return self.layers[0].copy()

    def truncate(self, order):
        if order > self.order:
            raise ValueError("cannot raise the truncation order")
        return SeriesMatrix(self.layers[: order + 1])

    def degree(self):
        """Highest power of xi with a nonzero layer (-1 for the zero matrix)."""
        for k in range(self.order, -1, -1):
            if not _is_zero(self.layers[k]):
                return k
        return -1

    def first_nonzero(self):
        for k, a in enumerate(self.layers):
            for (i, j), c in np.ndenumerate(a):
                if c:
                    return k, (i, j), c
        return None

    def witness(self):
        hit = self.first_nonzero()
        if hit is None:
            return None
        k, (i, j), c = hit
        return f"xi^{k} entry ({i + 1},{j + 1}): {format_rational(c)}"

    def to_json(self, degree=None):
        d = self.order if degree is None else degree
        return [[[format_rational(self.layers[k][i, j]) for k in range(d + 1)]
                 for j in range(self.n)] for i in range(self.n)]

    def render(self):
        rows = []
        for i in range(self.n):
            rows.append("[" + ", ".join(str(self.entry(i, j)) for j in range(self.n)) + "]")
        return "\n".join(rows)

    def __repr__(self):
        return f"SeriesMatrix(n={self.n}, order={self.order})"


class Fundamental:
    """rho: U(g) -> Mat_N for g = gl(N) or any algebra with a gl(N) embedding."""

    def __init__(self, N):
        if N < 2:
            raise ValueError("N must be at least 2")
        self.N = N
        self._gen = {}
        self._mono = {}

    def generator_matrix(self, algebra, i):
        key = (id(algebra), i)
        hit = self._gen.get(key)
        if hit is None:
            emb = algebra.gl_embedding
            if emb is None or emb[0] != self.N:
                raise ValueError(f"{algebra.label} has no gl({self.N}) embedding")
            hit = _zeros(self.N)
            for (a, b), c in emb[1][i].items():
                hit[a - 1, b - 1] += to_rational(c)
            self._gen[key] = hit
        return hit

    def monomial(self, algebra, m):
        key = (id(algebra), m)
        hit = self._mono.get(key)
        if hit is None:
            hit = _eye(self.N)
            for i, n in enumerate(m):
                g = self.generator_matrix(algebra, i)
                for _ in range(n):
                    hit = hit.dot(g)
            self._mono[key] = hit
        return hit

    def __call__(self, element):
        return evaluate_tensor(element, rho=self)


def fundamental(N):
    """The defining representation ``E_ij -> e_ij``."""
    return Fundamental(N)


def evaluate_tensor(t, N=None, rho=None):
    """``sum c rho(m_1) (x) ... (x) rho(m_r)`` as a SeriesMatrix of size N**rank."""
    if rho is None:
        emb = t.algebra.gl_embedding
        if emb is None:
            raise ValueError(f"{t.algebra.label} has no gl(N) embedding")
        rho = Fundamental(N or emb[0])
    N = rho.N
    if not 1 <= t.rank <= 3:
        raise ValueError("ranks 1 to 3 are supported")
    n = N ** t.rank
    out = []
    for layer in t.layers:
        acc = _zeros(n)
        for key, c in layer.items():
            mats = [rho.monomial(t.algebra, m) for m in key]
            big = mats[0]
            for m in mats[1:]:
                big = np.kron(big, m)
            acc = acc + big * c
        out.append(acc)
    return SeriesMatrix(out)


def flip_matrix(N):
    """Index permutation of the swap on C^N (x) C^N: e_i (x) e_j -> e_j (x) e_i."""
    return np.array([(k % N) * N + k // N for k in range(N * N)])


def _perm_23(N):
    """Swap of the last two legs on (C^N)^{(x)3}."""
    perm = []
    for k in range(N ** 3):
        a, b, c = k // (N * N), (k // N) % N, k % N
        perm.append(a * N * N + c * N + b)
    return np.array(perm)


def matrix_checks(N, K, tw=None):
    """QYBE, triangularity and the flip convention for rho(R) in the fundamental representation."""
    from .twist import canonical_twist, permute_legs

    rep = Report("matrix-r", {"N": N, "K": K})
    with timed(rep):
        tw = tw or canonical_twist(N, K)
        rho = Fundamental(N)
        R = evaluate_tensor(tw.R, rho=rho)
        F = evaluate_tensor(tw.F, rho=rho)
        F21 = evaluate_tensor(permute_legs(tw.F, [1, 0]), rho=rho)
        P = flip_matrix(N)
        I = SeriesMatrix.identity(N, K)
        R21 = R.conjugate(P)
        tri = R21 @ R - SeriesMatrix.identity(N * N, K)
        flip = F21 - F.conjugate(P)
        R12 = R.kron(I)
        R23 = I.kron(R)
        R13 = R12.conjugate(_perm_23(N))
        q = R12 @ R13 @ R23 - R23 @ R13 @ R12
        fails = []
        for label, res in (("R21 R - 1", tri), ("QYBE", q), ("flip convention", flip)):
            if not res.is_zero():
                fails.append(f"{label}: {res.witness()}")
        rep.details = {"triangular": tri.is_zero(), "qybe": q.is_zero(),
                       "flip_convention": flip.is_zero(), "R_degree": R.degree()}
        if fails:
            rep.status = "fail"
            rep.residual_witness = "; ".join(fails)
    return rep


def r_matrix(N, K):
    from .twist import canonical_twist

    return evaluate_tensor(canonical_twist(N, K).R, N)


def export_r_matrix(N, K, format="json"):
    """rho(R) as a polynomial matrix, after checking it is the same at K and K+1."""
    lo, hi = r_matrix(N, K), r_matrix(N, K + 1)
    if hi.degree() > K or not (hi.truncate(K) == lo):
        raise StabilizationError(
            f"R-matrix entries for N={N} are not stable between K={K} and K={K + 1}; increase K")
    deg = max(lo.degree(), 0)
    if format == "json":
        doc = {"object": "r-matrix", "N": N, "K": K, "size": N * N, "degree": deg,
               "convention": "leg 1 is the left Kronecker factor; entry [i][j] lists "
                             "coefficients of xi^0, xi^1, ...",
               "entries": lo.to_json(deg)}
        return json.dumps(doc, indent=2)
    if format == "text":
        return f"R-matrix, N={N}, exact through xi^{deg} (checked at K={K} and K={K + 1})\n" \
            + lo.render()
    raise ValueError(f"unknown format {format!r}")

"""Twisted (star) products on coordinates, momenta and derivatives.

gl(N) acts on polynomials in commuting coordinates ``x^1..x^N`` and a second
set of variables ``d_1..d_N`` by derivations.  In *Weyl* mode the ``d`` are
partial derivatives (``[d_mu, x^nu] = delta``) and the product is that of
the Weyl algebra; in *commuting* mode they are momenta ``p_mu`` commuting
with everything.  Elements are kept normal ordered, coordinates on the
left.

A twist F in U(g) (x) U(g) deforms the product to
``f * g = m(F^{-1}(f (x) g))``.
"""
from __future__ import annotations

from functools import lru_cache
from math import comb, factorial

from .reports import Report, timed
from .scalars import ONE, ZERO, XiSeries, format_rational, to_rational

__all__ = [
    "WeylElement",
    "StarAlgebra",
    "weyl_action",
    "star_product",
    "check_qspace_relations",
    "REALIZATIONS",
    "DEFAULT_REALIZATION",
    "Relation",
    "relation_catalogue",
    "covariance_residual",
]


def _clean(d):
    return {k: v for k, v in d.items() if v}


class WeylElement:
    """Normal-ordered polynomial in x and d with XiSeries coefficients.

    Monomials are exponent tuples of length 2N: the x part, then the d part.
    """

    __slots__ = ("N", "order", "weyl", "layers")

    def __init__(self, N, order, layers, weyl=True):
        self.N = N
        self.order = order
        self.weyl = weyl
        self.layers = layers

    # -- constructors --------------------------------------------------------
    @classmethod
    def zero(cls, N, order, weyl=True):
        return cls(N, order, [dict() for _ in range(order + 1)], weyl)

    @classmethod
    def monomial(cls, N, order, mono, coeff=ONE, weyl=True):
        layers = [dict() for _ in range(order + 1)]
        c = to_rational(coeff)
        if c:
            layers[0][tuple(mono)] = c
        return cls(N, order, layers, weyl)

    @classmethod
    def scalar(cls, N, order, value, weyl=True):
        return cls.monomial(N, order, (0,) * (2 * N), value, weyl)

    @classmethod
    def x(cls, N, mu, order, weyl=True):
        m = [0] * (2 * N)
        m[mu - 1] = 1
        return cls.monomial(N, order, m, weyl=weyl)

    @classmethod
    def d(cls, N, mu, order, weyl=True):
        m = [0] * (2 * N)
        m[N + mu - 1] = 1
        return cls.monomial(N, order, m, weyl=weyl)

    def _like(self, layers):
        return WeylElement(self.N, self.order, layers, self.weyl)

    # -- inspection --------------------------------------------------------------
    def is_zero(self):
        return not any(self.layers)

    def terms(self):
        out = {}
        for k, layer in enumerate(self.layers):
            for m, c in layer.items():
                out.setdefault(m, [ZERO] * (self.order + 1))[k] = c
        return {m: XiSeries._raw(v) for m, v in sorted(out.items())}

    def witness(self):
        for k, layer in enumerate(self.layers):
            if layer:
                m = min(layer)
                return f"xi^{k}: {format_rational(layer[m])} * {self._render_mono(m)}"
        return None

    def _render_mono(self, m):
        N = self.N
        sym = "d" if self.weyl else "p"
        parts = []
        for i, n in enumerate(m):
            name = f"x{i + 1}" if i < N else f"{sym}{i - N + 1}"
            if n:
                parts.append(name if n == 1 else f"{name}^{n}")
        return "*".join(parts) if parts else "1"

    def render(self):
        if self.is_zero():
            return "0"
        return " + ".join(f"({s})*{self._render_mono(m)}" for m, s in self.terms().items())

    __str__ = render

    # -- linear structure ----------------------------------------------------------
    def _check(self, other):
        if not isinstance(other, WeylElement):
            raise TypeError("expected a WeylElement")
        if (other.N, other.order, other.weyl) != (self.N, self.order, self.weyl):
            raise ValueError("incompatible WeylElements")

    def __add__(self, other):
        if not isinstance(other, WeylElement):
            other = WeylElement.scalar(self.N, self.order, other, self.weyl)
        self._check(other)
        out = []
        for a, b in zip(self.layers, other.layers):
            c = dict(a)
            for k, v in b.items():
                c[k] = c.get(k, ZERO) + v
            out.append(_clean(c))
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        return self._like([{k: -v for k, v in l.items()} for l in self.layers])

    def __sub__(self, other):
        if not isinstance(other, WeylElement):
            other = WeylElement.scalar(self.N, self.order, other, self.weyl)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s):
        s = to_rational(s)
        return self._like([_clean({k: v * s for k, v in l.items()}) for l in self.layers])

    def shift(self, k=1):
        """Multiply by ``xi**k``."""
        empty = [dict() for _ in range(k)]
        return self._like((empty + [dict(l) for l in self.layers])[: self.order + 1])

    def __eq__(self, other):
        if not isinstance(other, WeylElement):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    # -- classical product -------------------------------------------------------------
    def __mul__(self, other):
        """Undeformed product (Weyl algebra or commutative polynomials)."""
        if not isinstance(other, WeylElement):
            return self.scale(other)
        self._check(other)
        K, N = self.order, self.N
        out = [dict() for _ in range(K + 1)]
        for p, A in enumerate(self.layers):
            for q in range(K + 1 - p):
                B = other.layers[q]
                if not B:
                    continue
                tgt = out[p + q]
                for ma, ca in A.items():
                    for mb, cb in B.items():
                        for m, c in _mono_product(ma, mb, N, self.weyl):
                            tgt[m] = tgt.get(m, ZERO) + ca * cb * c
        return self._like([_clean(l) for l in out])

    def __rmul__(self, other):
        return self.scale(other)


@lru_cache(maxsize=None)
def _mono_product(a, b, N, weyl):
    """``x^a1 d^a2 * x^b1 d^b2`` in normal order."""
    if not weyl:
        return ((tuple(i + j for i, j in zip(a, b)), ONE),)
    # d^beta x^gamma = sum_k prod C(beta,k) C(gamma,k) k! x^{gamma-k} d^{beta-k}
    per = []
    for mu in range(N):
        beta, gamma = a[N + mu], b[mu]
        per.append([(k, comb(beta, k) * comb(gamma, k) * factorial(k))
                    for k in range(min(beta, gamma) + 1)])
    out = {}

    def rec(mu, ks, c):
        if mu == N:
            m = [0] * (2 * N)
            for nu in range(N):
                m[nu] = a[nu] + b[nu] - ks[nu]
                m[N + nu] = a[N + nu] - ks[nu] + b[N + nu]
            m = tuple(m)
            out[m] = out.get(m, 0) + c
            return
        for k, w in per[mu]:
            rec(mu + 1, ks + (k,), c * w)

    rec(0, (), 1)
    return tuple((m, to_rational(c)) for m, c in out.items() if c)


# -- realizations of gl(N) as derivations ---------------------------------------------
def _vector(N, i, j):
    """E_ij -> x^i d_j:  E_ij x^k = delta_jk x^i,  E_ij d_k = -delta_ik d_j."""
    return {("x", j): [(("x", i), ONE)], ("d", i): [(("d", j), -ONE)]}


def _reflected(N, i, j):
    """E_ij -> x^{N+1-i} d_{N+1-j} (the vector-field realization with reversed labels)."""
    return _vector(N, N + 1 - i, N + 1 - j)


def _dual(N, i, j):
    """E_ij -> -x^j d_i:  E_ij x^k = -delta_ik x^j,  E_ij d_k = delta_jk d_i."""
    return {("x", i): [(("x", j), -ONE)], ("d", j): [(("d", i), ONE)]}


REALIZATIONS = {"vector": _vector, "reflected": _reflected, "dual": _dual}
# The relation tables hold for "reflected" with F^{-1} (equivalently "dual" with F_21^{-1}).
DEFAULT_REALIZATION = "reflected"


class _Action:
    """Action of monomials of U(g) on normal-ordered monomials, memoized."""

    def __init__(self, algebra, N, realization):
        self.algebra = algebra
        self.N = N
        real = REALIZATIONS[realization]
        emb = algebra.gl_embedding
        if emb is None or emb[0] != N:
            raise ValueError(f"{algebra.label} has no gl({N}) embedding")
        # generator g -> {slot: [(slot', c)]} where slots index the 2N variables
        self.gens = []
        for image in emb[1]:
            table = {}
            for (i, j), c in image.items():
                for (kind, k), outs in real(N, i, j).items():
                    src = k - 1 if kind == "x" else N + k - 1
                    for (kind2, l), w in outs:
                        dst = l - 1 if kind2 == "x" else N + l - 1
                        table.setdefault(src, []).append((dst, w * to_rational(c)))
            self.gens.append(table)
        self._gen_memo = {}
        self._mono_memo = {}

    def gen_on(self, g, m):
        """Derivation g applied to monomial m (degree preserving)."""
        key = (g, m)
        hit = self._gen_memo.get(key)
        if hit is None:
            acc = {}
            for src, outs in self.gens[g].items():
                n = m[src]
                if not n:
                    continue
                for dst, w in outs:
                    mm = list(m)
                    mm[src] -= 1
                    mm[dst] += 1
                    mm = tuple(mm)
                    acc[mm] = acc.get(mm, ZERO) + n * w
            hit = tuple((k, v) for k, v in acc.items() if v)
            self._gen_memo[key] = hit
        return hit

    def mono_on(self, u, m):
        """PBW monomial u = e_1^n1 ... e_d^nd acting on m (rightmost factor first)."""
        key = (u, m)
        hit = self._mono_memo.get(key)
        if hit is not None:
            return hit
        cur = {m: ONE}
        for g in range(len(u) - 1, -1, -1):
            for _ in range(u[g]):
                nxt = {}
                for mm, c in cur.items():
                    for m2, w in self.gen_on(g, mm):
                        nxt[m2] = nxt.get(m2, ZERO) + c * w
                cur = _clean(nxt)
                if not cur:
                    break
        hit = tuple(cur.items())
        self._mono_memo[key] = hit
        return hit


def weyl_action(a, f, realization="vector"):
    """Action of a rank-1 element ``a`` of U(g) (g with a gl(N) embedding) on ``f``."""
    act = _Action(a.algebra, f.N, realization)
    return _apply_rank1(act, a, f)


def _apply_rank1(act, a, f):
    K = f.order
    out = [dict() for _ in range(K + 1)]
    for p, layer in enumerate(a.layers):
        for q in range(K + 1 - p):
            for m, c in f.layers[q].items():
                for (u,), ca in layer.items():
                    for m2, w in act.mono_on(u, m):
                        out[p + q][m2] = out[p + q].get(m2, ZERO) + ca * c * w
    return f._like([_clean(l) for l in out])


class StarAlgebra:
    """Star product ``f * g = m(G (f (x) g))`` for a rank-2 element G.

    ``G`` defaults to ``F^{-1}``; ``flip=True`` uses ``F_21^{-1}`` instead.
    """

    def __init__(self, twist, realization=DEFAULT_REALIZATION, flip=False, weyl=True):
        from .uea import permute_legs

        self.twist = twist
        self.N = twist.spec.N
        self.order = twist.order
        self.weyl = weyl
        self.realization = realization
        G = twist.F_inv
        self.G = permute_legs(G, [1, 0]) if flip else G
        self.act = _Action(twist.algebra, self.N, realization)
        self._memo = {}

    def x(self, mu):
        return WeylElement.x(self.N, mu, self.order, self.weyl)

    def d(self, mu):
        return WeylElement.d(self.N, mu, self.order, self.weyl)

    def one(self):
        return WeylElement.scalar(self.N, self.order, 1, self.weyl)

    def _mono_star(self, ma, mb):
        key = (ma, mb)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        K, N = self.order, self.N
        out = [dict() for _ in range(K + 1)]
        for k, layer in enumerate(self.G.layers):
            tgt = out[k]
            for (u1, u2), c in layer.items():
                left = self.act.mono_on(u1, ma)
                if not left:
                    continue
                right = self.act.mono_on(u2, mb)
                for m1, w1 in left:
                    for m2, w2 in right:
                        for m, w in _mono_product(m1, m2, N, self.weyl):
                            tgt[m] = tgt.get(m, ZERO) + c * w1 * w2 * w
        hit = [_clean(l) for l in out]
        self._memo[key] = hit
        return hit

    def star(self, f, g):
        K = self.order
        out = [dict() for _ in range(K + 1)]
        for p, A in enumerate(f.layers):
            for q in range(K + 1 - p):
                for ma, ca in A.items():
                    for mb, cb in g.layers[q].items():
                        prod = self._mono_star(ma, mb)
                        for r in range(K + 1 - p - q):
                            tgt = out[p + q + r]
                            for m, c in prod[r].items():
                                tgt[m] = tgt.get(m, ZERO) + ca * cb * c
        return f._like([_clean(l) for l in out])

    def commutator(self, f, g):
        return self.star(f, g) - self.star(g, f)

    def act_on(self, a, f):
        return _apply_rank1(self.act, a, f)


def star_product(f, g, twist, realization=DEFAULT_REALIZATION, flip=False):
    return StarAlgebra(twist, realization, flip, weyl=f.weyl).star(f, g)


# -- relation tables ----------------------------------------------------------------------------

class Relation:
    """One commutation relation: ``lhs - rhs`` must vanish.

    ``consistent`` optionally gives a corrected right-hand side for displayed
    forms that conflict with the rest of the tables; ``note`` says why.
    """

    def __init__(self, table, name, lhs, rhs, consistent=None, note=None):
        self.table = table
        self.name = name
        self.lhs = lhs
        self.rhs = rhs
        self.consistent = consistent
        self.note = note


def relation_catalogue(N, K, twist=None, realization=DEFAULT_REALIZATION):
    """All relations of the coordinate, momentum, cross and derivative tables."""
    from .twist import canonical_twist

    tw = twist or canonical_twist(N, K)
    P = StarAlgebra(tw, realization, weyl=False)
    W = StarAlgebra(tw, realization, weyl=True)
    ks = list(range(2, N))
    rels = []

    def xi(e, k=1):
        return e.shift(k)

    def total(A, items):
        out = WeylElement.zero(N, K, A.weyl)
        for e in items:
            out = out + e
        return out

    x, p, s, c = P.x, P.d, P.star, P.commutator
    zero = WeylElement.zero(N, K, weyl=False)
    # coordinates
    rels.append(Relation("coordinates", f"[x1,x{N}]", c(x(1), x(N)), xi(s(x(N), x(N)))))
    for i in ks:
        for k in ks:
            if i < k:
                rels.append(Relation("coordinates", f"[x{i},x{k}]", c(x(i), x(k)), zero))
    for k in ks:
        rels.append(Relation("coordinates", f"[x1,x{k}]", c(x(1), x(k)), xi(s(x(k), x(N))).scale(2)))
        rels.append(Relation("coordinates", f"[x{k},x{N}]", c(x(k), x(N)), zero))
    # momenta, then the same identities for derivatives
    for A, sym, table in ((P, "p", "momenta"), (W, "d", "derivatives")):
        d, st, cm = A.d, A.star, A.commutator
        z = WeylElement.zero(N, K, A.weyl)
        rels.append(Relation(table, f"[{sym}1,{sym}{N}]", cm(d(1), d(N)), xi(st(d(1), d(1)))))
        for i in ks:
            for k in ks:
                if i < k:
                    rels.append(Relation(table, f"[{sym}{i},{sym}{k}]", cm(d(i), d(k)), z))
        for k in ks:
            rels.append(Relation(table, f"[{sym}{k},{sym}{N}]", cm(d(k), d(N)),
                                 xi(st(d(1), d(k))).scale(2)))
            rels.append(Relation(table, f"[{sym}1,{sym}{k}]", cm(d(1), d(k)), z))
    # coordinate-momentum
    rhs = xi(total(P, [s(p(N), x(N))] + [s(p(k), x(k)).scale(2) for k in ks]
                   + [s(p(1), x(1)), xi(s(p(1), x(N)))]))
    rels.append(Relation("cross", f"[p{N},x1]", c(p(N), x(1)), rhs))
    rels.append(Relation("cross", "[p1,x1]", c(p(1), x(1)), -xi(s(p(1), x(N)))))
    for k in ks:
        rels.append(Relation("cross", f"[p{k},x{k}]", c(p(k), x(k)), -xi(s(p(1), x(N))).scale(2)))
    rels.append(Relation("cross", f"[p{N},x{N}]", c(p(N), x(N)), -xi(s(p(1), x(N)))))
    for m in range(1, N + 1):
        for n in range(1, N + 1):
            if m != n and not (m == N and n == 1):
                rels.append(Relation("cross (implied zero)", f"[p{m},x{n}]", c(p(m), x(n)), zero))
    # invariant element
    classical = total(P, [x(m) * p(m) for m in range(1, N + 1)])
    rels.append(Relation(
        "invariant", "x.p",
        classical,
        total(P, [s(x(m), p(m)) for m in range(1, N + 1)] + [xi(s(x(N), p(1)))]),
        consistent=total(P, [s(p(m), x(m)) for m in range(1, N + 1)] + [xi(s(p(1), x(N)))]),
        note="with coordinates on the left of the star the sum of the cross relations "
             "forces x*p - p*x = 2(N-1) xi p1 xN at first order, incompatible with the "
             "displayed correction; the identity holds with momenta on the left"))
    # coordinate-derivative
    x, d, s, c = W.x, W.d, W.star, W.commutator
    one = W.one()
    rels.append(Relation(
        "derivative cross", f"[d{N},x1]", c(d(N), x(1)),
        xi(total(W, [s(x(N), d(N))] + [s(x(k), d(k)).scale(2) for k in ks]
                 + [s(x(1), d(1)), xi(s(x(N), d(1)))])),
        consistent=xi(total(W, [s(d(N), x(N))] + [s(d(k), x(k)).scale(2) for k in ks]
                            + [s(x(1), d(1))])),
        note="the top-degree part must equal the momentum relation [pN,x1]; the displayed "
             "ordering adds (4N-6) xi^2 xN d1 and omits the constant (2N-3) xi"))
    rels.append(Relation("derivative cross", "[d1,x1]", c(d(1), x(1)), one - xi(s(x(N), d(1)))))
    for k in ks:
        rels.append(Relation(
            "derivative cross", f"[d{k},x{k}]", c(d(k), x(k)), one + xi(s(x(N), d(1))).scale(2),
            consistent=one - xi(s(x(N), d(1))).scale(2),
            note="the top-degree part must equal the momentum relation [pk,xk] = -2 xi p1*xN"))
    rels.append(Relation("derivative cross", f"[d{N},x{N}]", c(d(N), x(N)),
                         one - xi(s(x(N), d(1))),
                         note="the displayed derivative index is read as d1"))
    zero_w = WeylElement.zero(N, K, weyl=True)
    for m in range(1, N + 1):
        for n in range(1, N + 1):
            if m != n and not (m == N and n == 1):
                rels.append(Relation("derivative cross (implied zero)", f"[d{m},x{n}]",
                                     c(d(m), x(n)), zero_w))
    return rels


def check_qspace_relations(N, K, reading="displayed", twist=None, realization=DEFAULT_REALIZATION):
    """Verify the quantum-space tables.

    ``reading="displayed"`` demands every relation as displayed;
    ``reading="consistent"`` uses the corrected right-hand side where one is
    recorded.  The details always list both outcomes per relation.
    """
    if reading not in ("displayed", "consistent"):
        raise ValueError("reading must be 'displayed' or 'consistent'")
    if N < 2:
        raise ValueError("N must be at least 2")
    rep = Report("qspace", {"N": N, "K": K, "reading": reading})
    with timed(rep):
        rows, fails = [], []
        for r in relation_catalogue(N, K, twist, realization):
            res = r.lhs - r.rhs
            row = {"table": r.table, "relation": r.name, "displayed": res.is_zero()}
            ok = res.is_zero()
            if r.consistent is not None:
                cres = r.lhs - r.consistent
                row["consistent"] = cres.is_zero()
                if reading == "consistent":
                    ok = cres.is_zero()
                    res = cres
            if not row["displayed"]:
                row["displayed_residual"] = (r.lhs - r.rhs).render()
            if r.note:
                row["note"] = r.note
            rows.append(row)
            if not ok:
                fails.append(f"{r.name}: {res.witness()}")
        rep.details = {"realization": realization, "relations": rows,
                       "checked": len(rows),
                       "displayed_failures": [r["relation"] for r in rows if not r["displayed"]]}
        if fails:
            rep.status = "fail"
            rep.residual_witness = "; ".join(fails[:4])
    return rep


def covariance_residual(algebra_star, h, f, g):
    """``h.(f*g) - sum (h_(1).f) * (h_(2).g)`` with the twisted coproduct of ``h``."""
    A = algebra_star
    cop = A.twist.coproduct()
    lhs = A.act_on(h, A.star(f, g))
    D = cop(h)
    K, N = A.order, A.N
    rhs = WeylElement.zero(N, K, A.weyl)
    for k, layer in enumerate(D.layers):
        for (u1, u2), c in layer.items():
            left = WeylElement(N, K, [dict() for _ in range(K + 1)], A.weyl)
            right = WeylElement(N, K, [dict() for _ in range(K + 1)], A.weyl)
            for q in range(K + 1):
                for m, cf in f.layers[q].items():
                    for m2, w in A.act.mono_on(u1, m):
                        left.layers[q][m2] = left.layers[q].get(m2, ZERO) + cf * w
                for m, cg in g.layers[q].items():
                    for m2, w in A.act.mono_on(u2, m):
                        right.layers[q][m2] = right.layers[q].get(m2, ZERO) + cg * w
            left.layers = [_clean(l) for l in left.layers]
            right.layers = [_clean(l) for l in right.layers]
            rhs = rhs + A.star(left, right).scale(c).shift(k)
    return lhs - rhs

"""Elements of U(g)[[xi]] / xi**(K+1) and its tensor powers.

An element is stored as ``K + 1`` layers; layer ``k`` maps keys (tuples of
PBW monomials, one per tensor leg) to the rational coefficient of
``xi**k``.  The public view :attr:`TensorElement.terms` regroups this into
``{key: XiSeries}``.  All products go through the algebra's PBW kernel.

Leg operations are expressed with :class:`LegMap` objects: a leg map sends
a monomial to a graded element of some rank (the coproduct has rank 2, the
counit rank 0, algebra morphisms rank 1), and :func:`apply_leg_maps`
applies one map per leg.
"""
from __future__ import annotations

from math import comb

from .scalars import (
    ONE,
    ZERO,
    NotInvertibleError,
    OrderMismatchError,
    Q,
    XiSeries,
    format_rational,
    to_rational,
)

__all__ = [
    "TensorElement",
    "UEAElement",
    "AlgebraMismatchError",
    "RankMismatchError",
    "NotXiPositiveError",
    "LegMap",
    "AlgebraMap",
    "CoproductMap",
    "CounitMap",
    "IdentityMap",
    "apply_leg_maps",
    "tensor",
    "multiply",
    "commutator",
    "coproduct",
    "counit",
    "antipode",
    "antipode_map",
    "exp_positive",
    "log1p_positive",
    "invert",
    "sigma",
    "leg_map",
    "permute_legs",
    "insert_unit",
    "multiply_legs",
    "render_monomial",
]


class AlgebraMismatchError(ValueError):
    """Operands live over different Lie algebras."""


class RankMismatchError(ValueError):
    """Operands have different tensor ranks."""


class NotXiPositiveError(ValueError):
    """An exponential or logarithm was requested for an element with a xi^0 part."""


def _clean(layer):
    return {k: v for k, v in layer.items() if v}


class TensorElement:
    """Element of U(g)^{(x) rank}[[xi]] / xi**(K+1).

    Treat instances as immutable; arithmetic returns new objects.
    """

    __slots__ = ("algebra", "rank", "order", "layers")

    def __init__(self, algebra, rank, order, layers):
        if len(layers) != order + 1:
            raise ValueError("expected one layer per power of xi")
        self.algebra = algebra
        self.rank = rank
        self.order = order
        self.layers = layers

    # -- construction -----------------------------------------------------
    @staticmethod
    def _make(algebra, rank, order, layers):
        cls = UEAElement if rank == 1 else TensorElement
        obj = cls.__new__(cls)
        obj.algebra = algebra
        obj.rank = rank
        obj.order = order
        obj.layers = layers
        return obj

    @classmethod
    def zero(cls, algebra, rank, order):
        return TensorElement._make(algebra, rank, order, [dict() for _ in range(order + 1)])

    @classmethod
    def unit(cls, algebra, rank, order):
        t = cls.zero(algebra, rank, order)
        t.layers[0][(algebra.kernel.unit,) * rank] = ONE
        return t

    @classmethod
    def from_terms(cls, algebra, rank, order, terms):
        """Build from ``{key: coeff}`` with rational or XiSeries coefficients."""
        layers = [dict() for _ in range(order + 1)]
        for key, c in terms.items():
            key = tuple(tuple(int(x) for x in m) for m in key)
            if len(key) != rank or any(len(m) != algebra.dim for m in key):
                raise ValueError(f"bad key {key!r} for rank {rank} over {algebra.label}")
            if isinstance(c, XiSeries):
                if c.order != order:
                    raise OrderMismatchError("coefficient order differs from element order")
                for k, x in enumerate(c):
                    if x:
                        layers[k][key] = layers[k].get(key, ZERO) + x
            else:
                c = to_rational(c)
                if c:
                    layers[0][key] = layers[0].get(key, ZERO) + c
        return TensorElement._make(algebra, rank, order, [_clean(l) for l in layers])

    def _like(self, layers):
        return TensorElement._make(self.algebra, self.rank, self.order, layers)

    # -- views ------------------------------------------------------------
    @property
    def terms(self):
        """``{key: XiSeries}`` (rank-1 elements override this with monomial keys)."""
        out = {}
        for k, layer in enumerate(self.layers):
            for key, c in layer.items():
                out.setdefault(key, [ZERO] * (self.order + 1))[k] = c
        return {key: XiSeries._raw(v) for key, v in sorted(out.items())}

    def coefficient(self, key):
        return XiSeries._raw([layer.get(key, ZERO) for layer in self.layers])

    def support(self):
        keys = set()
        for layer in self.layers:
            keys.update(layer)
        return keys

    def is_zero(self):
        return not any(self.layers)

    def __bool__(self):
        return not self.is_zero()

    def valuation(self):
        for k, layer in enumerate(self.layers):
            if layer:
                return k
        return self.order + 1

    def constant_part(self):
        return self._like([dict(self.layers[0])] + [dict() for _ in range(self.order)])

    def nterms(self):
        return sum(len(l) for l in self.layers)

    def max_degree(self):
        return max((sum(sum(m) for m in key) for l in self.layers for key in l), default=0)

    def first_nonzero(self):
        """``(power, key, coeff)`` of the lowest-order, smallest nonzero term."""
        for k, layer in enumerate(self.layers):
            if layer:
                key = min(layer)
                return k, key, layer[key]
        return None

    def witness(self):
        hit = self.first_nonzero()
        if hit is None:
            return None
        k, key, c = hit
        legs = " (x) ".join(render_monomial(self.algebra, m) for m in key)
        return f"xi^{k}: {format_rational(c)} * {legs}"

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other):
        if not isinstance(other, TensorElement):
            raise TypeError("expected a TensorElement")
        if other.algebra is not self.algebra:
            raise AlgebraMismatchError(f"{self.algebra.label} vs {other.algebra.label}")
        if other.rank != self.rank:
            raise RankMismatchError(f"rank {self.rank} vs rank {other.rank}")
        if other.order != self.order:
            raise OrderMismatchError(f"order {self.order} vs order {other.order}")

    def __add__(self, other):
        if not isinstance(other, TensorElement):
            return self + self._scalar(other)
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
        if not isinstance(other, TensorElement):
            return self - self._scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def _scalar(self, s):
        return TensorElement.unit(self.algebra, self.rank, self.order).scale(s)

    def scale(self, s):
        """Multiply by a rational or an XiSeries."""
        if isinstance(s, XiSeries):
            if s.order != self.order:
                raise OrderMismatchError("scalar series order differs from element order")
            out = [dict() for _ in range(self.order + 1)]
            for q, sc in enumerate(s):
                if not sc:
                    continue
                for p in range(self.order + 1 - q):
                    tgt = out[p + q]
                    for k, v in self.layers[p].items():
                        tgt[k] = tgt.get(k, ZERO) + sc * v
            return self._like([_clean(l) for l in out])
        s = to_rational(s)
        if not s:
            return self._like([dict() for _ in self.layers])
        return self._like([{k: v * s for k, v in l.items()} for l in self.layers])

    def __mul__(self, other):
        if not isinstance(other, TensorElement):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        self._check(other)
        layers = self.algebra.kernel.graded_mul(self.layers, other.layers, self.order, self.rank)
        return self._like(layers)

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, TensorElement):
            return self * invert(other)
        s = to_rational(other)
        return self.scale(ONE / s)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = TensorElement.unit(self.algebra, self.rank, self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, TensorElement):
            if (other.algebra is not self.algebra or other.rank != self.rank
                    or other.order != self.order):
                return False
            return self.layers == other.layers
        try:
            return self == self._scalar(other)
        except TypeError:
            return NotImplemented

    __hash__ = None

    def shift(self, k):
        """Multiply by ``xi**k``."""
        if k < 0:
            raise ValueError("negative shift")
        empty = [dict() for _ in range(k)]
        return self._like((empty + [dict(l) for l in self.layers])[: self.order + 1])

    def divide_by_xi(self):
        """Exact division by xi; the top layer of the quotient is unknown and set to zero."""
        if self.layers[0]:
            raise NotInvertibleError("element has a xi^0 part and is not divisible by xi")
        return self._like([dict(l) for l in self.layers[1:]] + [dict()])

    def truncate(self, order):
        if order > self.order:
            raise OrderMismatchError("cannot raise the truncation order")
        return TensorElement._make(self.algebra, self.rank, order, [dict(l) for l in self.layers[: order + 1]])

    def substitute(self, value):
        """Evaluate at a rational xi; returns a rank-``rank`` element of order 0."""
        value = to_rational(value)
        acc = {}
        p = ONE
        for layer in self.layers:
            for k, v in layer.items():
                acc[k] = acc.get(k, ZERO) + p * v
            p *= value
        return TensorElement._make(self.algebra, self.rank, 0, [_clean(acc)])

    # -- rendering ------------------------------------------------------------
    def render(self):
        terms = TensorElement.terms.fget(self)
        if not terms:
            return "0"
        parts = []
        for key, s in terms.items():
            legs = " (x) ".join(render_monomial(self.algebra, m) for m in key)
            parts.append(f"({s}) {legs}")
        return "\n+ ".join(parts)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"<TensorElement rank={self.rank} order={self.order} terms={self.nterms()} over {self.algebra.label}>"


class UEAElement(TensorElement):
    """Rank-1 element: an element of U(g)[[xi]] / xi**(K+1)."""

    __slots__ = ()

    def __init__(self, algebra, order, terms=None):
        layers = TensorElement.from_terms(
            algebra, 1, order, {(m,): c for m, c in (terms or {}).items()}
        ).layers
        super().__init__(algebra, 1, order, layers)

    @classmethod
    def generator(cls, algebra, name, order):
        i = algebra.index(name)
        m = [0] * algebra.dim
        m[i] = 1
        return cls(algebra, order, {tuple(m): ONE})

    @classmethod
    def scalar(cls, algebra, value, order):
        return TensorElement.unit(algebra, 1, order).scale(value)

    @classmethod
    def from_vector(cls, algebra, vec, order):
        """Linear combination ``{name_or_index: coeff}`` of generators."""
        out = TensorElement.zero(algebra, 1, order)
        for key, c in vec.items():
            out = out + cls.generator(algebra, key, order).scale(c)
        return out

    @property
    def terms(self):
        return {key[0]: s for key, s in TensorElement.terms.fget(self).items()}

    def coefficient(self, mono):
        return TensorElement.coefficient(self, (tuple(mono),))


def render_monomial(g, m):
    parts = []
    for i, n in enumerate(m):
        if n == 1:
            parts.append(g.names[i])
        elif n > 1:
            parts.append(f"{g.names[i]}^{n}")
    return "*".join(parts) if parts else "1"


def tensor(*elems):
    """Graded tensor product ``a (x) b (x) ...`` of elements over one algebra."""
    if not elems:
        raise ValueError("tensor of nothing")
    g, K = elems[0].algebra, elems[0].order
    layers = elems[0].layers
    rank = elems[0].rank
    for e in elems[1:]:
        if e.algebra is not g:
            raise AlgebraMismatchError("tensor factors over different algebras")
        if e.order != K:
            raise OrderMismatchError("tensor factors of different orders")
        out = [dict() for _ in range(K + 1)]
        for p, lp in enumerate(layers):
            if not lp:
                continue
            for q in range(K + 1 - p):
                lq = e.layers[q]
                tgt = out[p + q]
                for ka, ca in lp.items():
                    for kb, cb in lq.items():
                        k = ka + kb
                        tgt[k] = tgt.get(k, ZERO) + ca * cb
        layers = [_clean(l) for l in out]
        rank += e.rank
    return TensorElement._make(g, rank, K, layers)


# -- basic operations -----------------------------------------------------------
def multiply(a, b):
    return a * b


def commutator(a, b):
    return a * b - b * a


def counit(a):
    """Counit of a rank-1 element: the coefficient of the empty monomial."""
    return a.coefficient(a.algebra.kernel.unit)


# -- leg maps -------------------------------------------------------------------
class LegMap:
    """Maps a monomial of ``source`` to a graded element of rank ``out_rank``.

    Subclasses implement :meth:`_image`, returning a list of layers whose
    keys are ``out_rank``-tuples of monomials of ``target``.
    """

    out_rank = 1

    def __init__(self, source, target, order):
        self.source = source
        self.target = target
        self.order = order
        self._cache = {}

    def image(self, m):
        hit = self._cache.get(m)
        if hit is None:
            hit = self._image(m)
            self._cache[m] = hit
        return hit

    def _image(self, m):  # pragma: no cover - abstract
        raise NotImplementedError

    def __call__(self, elem):
        return apply_leg_maps(elem, [self])


class IdentityMap(LegMap):
    def __init__(self, algebra, order):
        super().__init__(algebra, algebra, order)

    def _image(self, m):
        return [{(m,): ONE}] + [dict() for _ in range(self.order)]


class CoproductMap(LegMap):
    """Classical coproduct: generators are primitive."""

    out_rank = 2

    def __init__(self, algebra, order):
        super().__init__(algebra, algebra, order)

    def _image(self, m):
        layer = {}
        ranges = [range(n + 1) for n in m]

        def rec(i, left, coeff):
            if i == len(m):
                right = tuple(n - k for n, k in zip(m, left))
                layer[(tuple(left), right)] = Q(coeff)
                return
            for k in ranges[i]:
                rec(i + 1, left + [k], coeff * comb(m[i], k))

        rec(0, [], 1)
        return [layer] + [dict() for _ in range(self.order)]


class CounitMap(LegMap):
    out_rank = 0

    def __init__(self, algebra, order):
        super().__init__(algebra, algebra, order)

    def _image(self, m):
        layer = {(): ONE} if not any(m) else {}
        return [layer] + [dict() for _ in range(self.order)]


class AlgebraMap(LegMap):
    """Algebra morphism (or anti-morphism) fixed by its values on generators.

    ``images[i]`` is a :class:`TensorElement` over ``target`` (all of the
    same rank), the image of the i-th basis element of ``source``.  With
    ``anti=True`` the map reverses products.  No check that the images obey
    the source relations is made here; see :func:`check_morphism`.
    """

    def __init__(self, source, target, images, anti=False):
        images = list(images)
        if len(images) != source.dim:
            raise ValueError("one image per basis element is required")
        order = images[0].order
        super().__init__(source, target, order)
        self.images = images
        self.anti = anti
        self.out_rank = images[0].rank
        for im in images:
            if im.algebra is not target or im.order != order or im.rank != self.out_rank:
                raise ValueError("images must share algebra, order and rank")

    def _image(self, m):
        unit = TensorElement.unit(self.target, self.out_rank, self.order)
        if not any(m):
            return unit.layers
        # peel the last generator (first one for anti maps) and recurse
        idx = [i for i, n in enumerate(m) if n]
        i = idx[-1] if not self.anti else idx[0]
        rest = list(m)
        rest[i] -= 1
        rest = tuple(rest)
        prev = TensorElement._make(self.target, self.out_rank, self.order, self.image(rest))
        # f(m' e_i) = f(m') f(e_i);  for anti maps f(e_i m') = f(m') f(e_i)
        return (prev * self.images[i]).layers

    def check_morphism(self):
        """Pairs (i, j) where the images violate the bracket relations."""
        bad = []
        g = self.source
        for i in range(g.dim):
            for j in range(i + 1, g.dim):
                a, b = self.images[i], self.images[j]
                lhs = a * b - b * a
                if self.anti:
                    lhs = -lhs
                rhs = TensorElement.zero(self.target, self.out_rank, self.order)
                for k, c in g.bracket(i, j).items():
                    rhs = rhs + self.images[k].scale(c)
                if lhs != rhs:
                    bad.append((i, j))
        return bad


def apply_leg_maps(t, maps):
    """Apply ``maps[i]`` to leg ``i`` of ``t`` (``None`` leaves a leg alone)."""
    if len(maps) != t.rank:
        raise RankMismatchError(f"{len(maps)} leg maps for a rank-{t.rank} tensor")
    K = t.order
    idmaps = {}
    real = []
    for m in maps:
        if m is None:
            m = idmaps.setdefault(t.algebra, IdentityMap(t.algebra, K))
        if m.order != K:
            raise OrderMismatchError("leg map order differs from the element order")
        real.append(m)
    targets = {m.target for m in real if m.out_rank}
    if len(targets) > 1:
        raise AlgebraMismatchError("leg maps land in different algebras")
    target = targets.pop() if targets else t.algebra
    out_rank = sum(m.out_rank for m in real)
    out = [dict() for _ in range(K + 1)]
    for p, layer in enumerate(t.layers):
        for key, c in layer.items():
            partial = [(p, (), c)]
            for leg, m in zip(key, real):
                img = m.image(leg)
                nxt = []
                for q0, k0, c0 in partial:
                    for q in range(K + 1 - q0):
                        for k1, c1 in img[q].items():
                            nxt.append((q0 + q, k0 + k1, c0 * c1))
                partial = nxt
                if not partial:
                    break
            for q, k, v in partial:
                tgt = out[q]
                tgt[k] = tgt.get(k, ZERO) + v
    layers = [_clean(l) for l in out]
    if out_rank == 0:
        return XiSeries._raw([l.get((), ZERO) for l in layers])
    return TensorElement._make(target, out_rank, K, layers)


def coproduct(a):
    """Classical coproduct of a rank-1 element."""
    return apply_leg_maps(a, [CoproductMap(a.algebra, a.order)])


def antipode_map(algebra, order):
    imgs = [UEAElement.generator(algebra, i, order).scale(-1) for i in range(algebra.dim)]
    return AlgebraMap(algebra, algebra, imgs, anti=True)


def antipode(a):
    """Classical antipode: the anti-automorphism with S(e_i) = -e_i."""
    return apply_leg_maps(a, [antipode_map(a.algebra, a.order)])


def permute_legs(t, perm):
    """Leg ``i`` of the result is leg ``perm[i]`` of ``t``."""
    if sorted(perm) != list(range(t.rank)):
        raise ValueError(f"{perm!r} is not a permutation of the legs")
    layers = [{tuple(k[j] for j in perm): v for k, v in l.items()} for l in t.layers]
    return t._like(layers)


def insert_unit(t, position):
    """Insert a unit leg so that it becomes leg ``position`` of the result."""
    u = t.algebra.kernel.unit
    layers = [{k[:position] + (u,) + k[position:]: v for k, v in l.items()} for l in t.layers]
    return TensorElement._make(t.algebra, t.rank + 1, t.order, layers)


def multiply_legs(t):
    """``m``: multiply the two legs of a rank-2 tensor."""
    if t.rank != 2:
        raise RankMismatchError("multiply_legs needs a rank-2 tensor")
    ker = t.algebra.kernel
    out = []
    for l in t.layers:
        acc = {}
        for (a, b), c in l.items():
            for m, cm in ker.mul_mono(a, b):
                acc[(m,)] = acc.get((m,), ZERO) + c * cm
        out.append(_clean(acc))
    return TensorElement._make(t.algebra, 1, t.order, out)


_LEG_ACTIONS = ("delta_id", "id_delta", "embed_12", "embed_23", "embed_13", "swap")


def leg_map(t, action):
    """Standard leg operations on a rank-2 tensor.

    ``action`` is one of ``delta_id``, ``id_delta``, ``embed_12``,
    ``embed_23``, ``embed_13`` and ``swap``.
    """
    if action not in _LEG_ACTIONS:
        raise ValueError(f"unknown leg action {action!r}")
    if action == "swap":
        if t.rank < 2:
            raise RankMismatchError("swap needs at least two legs")
        return permute_legs(t, [1, 0] + list(range(2, t.rank)))
    if t.rank != 2:
        raise RankMismatchError(f"{action} needs a rank-2 tensor")
    if action == "delta_id":
        return apply_leg_maps(t, [CoproductMap(t.algebra, t.order), None])
    if action == "id_delta":
        return apply_leg_maps(t, [None, CoproductMap(t.algebra, t.order)])
    pos = {"embed_12": 2, "embed_23": 0, "embed_13": 1}[action]
    return insert_unit(t, pos)


# -- exponentials and inverses ----------------------------------------------------
def _require_positive(x):
    if x.layers[0]:
        raise NotXiPositiveError("element has a nonzero xi^0 part")


def exp_positive(x):
    """``sum_k x**k / k!`` for an element of positive xi-valuation."""
    _require_positive(x)
    result = TensorElement.unit(x.algebra, x.rank, x.order)
    term = result
    for k in range(1, x.order + 1):
        term = (term * x).scale(Q(1, k))
        if term.is_zero():
            break
        result = result + term
    return result


def log1p_positive(x):
    """``ln(1 + x)`` for an element of positive xi-valuation."""
    _require_positive(x)
    result = TensorElement.zero(x.algebra, x.rank, x.order)
    power = TensorElement.unit(x.algebra, x.rank, x.order)
    for k in range(1, x.order + 1):
        power = power * x
        if power.is_zero():
            break
        result = result + power.scale(Q(1 if k % 2 else -1, k))
    return result


def invert(t):
    """Multiplicative inverse; the xi^0 part must be a nonzero multiple of the unit."""
    unit_key = (t.algebra.kernel.unit,) * t.rank
    l0 = t.layers[0]
    if set(l0) != {unit_key}:
        raise NotInvertibleError("xi^0 part is not an invertible multiple of the unit")
    c = l0[unit_key]
    y = t.scale(ONE / c) - TensorElement.unit(t.algebra, t.rank, t.order)
    neg = -y
    result = TensorElement.unit(t.algebra, t.rank, t.order)
    power = result
    for _ in range(t.order):
        power = power * neg
        if power.is_zero():
            break
        result = result + power
    return result.scale(ONE / c)


def sigma(algebra, order, e="E"):
    """``sigma = (1/2) ln(1 + 2 xi E)`` for the generator ``e`` of ``algebra``.

    ``e`` is a basis name or index; the default picks the second basis
    element of the restricted Borel algebras (E_1N) or the name ``E``.
    """
    if e == "E" and "E" not in algebra.names:
        e = 1
    x = UEAElement.generator(algebra, e, order).shift(1).scale(2)
    if order == 0:
        return TensorElement.zero(algebra, 1, 0)
    return log1p_positive(x).scale(Q(1, 2))

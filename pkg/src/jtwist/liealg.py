"""Finite-dimensional Lie algebras given by rational structure constants.

Besides the generic container this module builds the algebras the twist
machinery runs on: gl(N), the restricted Borel subalgebra of sl(N) spanned
by H_1N, E_1N, E_1j, E_jN, the four-generator algebra {H, A, B, E}, and the
dual algebra of the restricted Borel subalgebra carrying the first-order
deformation of the dual Lie product.  It also evaluates the classical
Yang-Baxter equation for elements of g (x) g.
"""
from __future__ import annotations

import json
from itertools import product

from ._linalg import rank, solve
from .scalars import ONE, ZERO, Q, format_rational, parse_rational, to_rational

__all__ = [
    "LieAlgebraData",
    "LieAlgebraError",
    "LieTensor",
    "WedgeElement",
    "make_gl",
    "make_borel_restricted",
    "make_L_abstract",
    "make_dual_borel",
    "dual_product",
    "check_jacobi",
    "check_antisymmetry",
    "cybe_residual",
    "r_hom_check",
    "r_hom_map",
    "algebra_to_json",
    "algebra_from_json",
    "jacobi_report",
    "gl_index",
]


class LieAlgebraError(ValueError):
    """Invalid dimension, inconsistent structure constants, unknown names."""


def _is_zero(x):
    if hasattr(x, "is_zero"):
        return x.is_zero()
    return not x


class LieAlgebraData:
    """A Lie algebra on an ordered basis with ``[e_i, e_j] = sum_k c[i][j][k] e_k``.

    ``brackets`` maps ordered pairs ``(i, j)`` to sparse dicts ``{k: c}``;
    the antisymmetric partner is filled in automatically (an inconsistent
    partner raises).  ``gl_embedding``, when given, is a pair ``(N, images)``
    where ``images[i]`` is a dict ``{(a, b): coeff}`` expressing ``e_i`` in
    the matrix units of gl(N); it is used by the fundamental representation
    and the quantum-space realization.

    Instances are treated as immutable.  The PBW rewriting kernel (and its
    memo tables) is attached lazily, one per algebra.
    """

    def __init__(self, names, brackets, gl_embedding=None, label=None):
        self.names = tuple(str(n) for n in names)
        self.dim = len(self.names)
        if self.dim < 1:
            raise LieAlgebraError("a Lie algebra needs at least one basis element")
        if len(set(self.names)) != self.dim:
            raise LieAlgebraError("basis names must be distinct")
        self._index = {n: i for i, n in enumerate(self.names)}
        table = {}
        for (i, j), vec in brackets.items():
            if not (0 <= i < self.dim and 0 <= j < self.dim):
                raise LieAlgebraError(f"bracket index out of range: {(i, j)}")
            clean = {k: to_rational(c) for k, c in vec.items() if to_rational(c)}
            if i == j:
                if clean:
                    raise LieAlgebraError(f"[e_{i}, e_{i}] must vanish")
                continue
            neg = {k: -c for k, c in clean.items()}
            if (j, i) in table and table[(j, i)] != neg:
                raise LieAlgebraError(f"brackets ({i},{j}) and ({j},{i}) are not antisymmetric")
            if clean:
                table[(i, j)] = clean
                table[(j, i)] = neg
        self._br = table
        self.gl_embedding = gl_embedding
        self.label = label or f"lie[{self.dim}]"
        self._kernel = None

    # -- basic access -------------------------------------------------------
    def __repr__(self):
        return f"LieAlgebraData({self.label}, dim={self.dim})"

    def index(self, name):
        if isinstance(name, int):
            if not 0 <= name < self.dim:
                raise LieAlgebraError(f"basis index {name} out of range")
            return name
        try:
            return self._index[name]
        except KeyError:
            raise LieAlgebraError(f"unknown basis element {name!r} in {self.label}") from None

    def bracket(self, i, j):
        """``[e_i, e_j]`` as a sparse dict (do not mutate)."""
        return self._br.get((self.index(i), self.index(j)), {})

    def structure_constant(self, i, j, k):
        return self._br.get((i, j), {}).get(k, ZERO)

    @property
    def c(self):
        """Dense structure constants ``c[i][j][k]``."""
        d = self.dim
        return [[[self.structure_constant(i, j, k) for k in range(d)] for j in range(d)] for i in range(d)]

    def nonzero_brackets(self):
        return dict(self._br)

    def vector(self, combo):
        """Normalize ``{name_or_index: coeff}`` to ``{index: Q}``."""
        out = {}
        for key, c in combo.items():
            c = to_rational(c)
            if c:
                i = self.index(key)
                out[i] = out.get(i, ZERO) + c
        return {i: c for i, c in out.items() if c}

    def bracket_vec(self, x, y):
        """Bracket of two linear combinations ``{index: coeff}``."""
        out = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self._br.get((i, j), {}).items():
                    out[k] = out.get(k, ZERO) + a * b * c
        return {k: v for k, v in out.items() if not _is_zero(v)}

    @property
    def kernel(self):
        if self._kernel is None:
            from .kernel import PBWKernel

            lower = {}
            for (i, j), vec in self._br.items():
                if i > j:
                    lower[(i, j)] = tuple(sorted(vec.items()))
            self._kernel = PBWKernel(self.dim, lower)
        return self._kernel

    def render_vector(self, vec):
        if not vec:
            return "0"
        parts = []
        for i in sorted(vec):
            c = vec[i]
            parts.append(f"{format_rational(c)}*{self.names[i]}" if c != 1 else self.names[i])
        return " + ".join(parts)


# -- validity checks ---------------------------------------------------------
def check_antisymmetry(g):
    """Pairs ``(i, j)`` where ``[e_i, e_j] != -[e_j, e_i]`` (empty if fine)."""
    bad = []
    for i in range(g.dim):
        for j in range(g.dim):
            a = g.bracket(i, j)
            b = g.bracket(j, i)
            if {k: -v for k, v in b.items()} != a:
                bad.append((i, j))
    return bad


def check_jacobi(g):
    """Triples ``(i, j, k)`` (i < j < k) violating the Jacobi identity."""
    bad = []
    d = g.dim
    for i in range(d):
        for j in range(i + 1, d):
            for k in range(j + 1, d):
                acc = {}
                for (a, b, c) in ((i, j, k), (j, k, i), (k, i, j)):
                    inner = g.bracket(a, b)
                    for m, coef in inner.items():
                        for l, c2 in g.bracket(m, c).items():
                            acc[l] = acc.get(l, ZERO) + coef * c2
                if any(v for v in acc.values()):
                    bad.append((i, j, k))
    return bad


def _jacobi_raw(d, br):
    """Jacobi violations for a raw table that need not be antisymmetric."""
    bad = []
    for i, j, k in product(range(d), repeat=3):
        acc = {}
        for (a, b, c) in ((i, j, k), (j, k, i), (k, i, j)):
            for m, coef in br.get((a, b), {}).items():
                for l, c2 in br.get((m, c), {}).items():
                    acc[l] = acc.get(l, ZERO) + coef * c2
        if any(v for v in acc.values()):
            bad.append((i, j, k))
    return bad


# -- constructors ------------------------------------------------------------
def _gl_name(N, i, j):
    return f"E{i}{j}" if N < 10 else f"E{i},{j}"


def make_gl(N):
    """gl(N) on the matrix units E_ij ordered lexicographically by (i, j)."""
    if not isinstance(N, int) or N < 2:
        raise LieAlgebraError(f"gl(N) needs N >= 2, got {N!r}")
    idx = {}
    names = []
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            idx[(i, j)] = len(names)
            names.append(_gl_name(N, i, j))
    br = {}
    for (i, k), a in idx.items():
        for (l, m), b in idx.items():
            vec = {}
            if k == l:
                vec[idx[(i, m)]] = vec.get(idx[(i, m)], ZERO) + ONE
            if i == m:
                vec[idx[(l, k)]] = vec.get(idx[(l, k)], ZERO) - ONE
            vec = {t: c for t, c in vec.items() if c}
            if vec:
                br[(a, b)] = vec
    images = tuple({(i, j): ONE} for i in range(1, N + 1) for j in range(1, N + 1))
    return LieAlgebraData(names, br, gl_embedding=(N, images), label=f"gl({N})")


def gl_index(N, i, j):
    """Position of E_ij in the basis of :func:`make_gl`."""
    return (i - 1) * N + (j - 1)


def _matrix_bracket(x, y):
    """Bracket of two sparse matrix-unit combinations ``{(a, b): c}``."""
    out = {}
    for (i, k), a in x.items():
        for (l, m), b in y.items():
            if k == l:
                out[(i, m)] = out.get((i, m), ZERO) + a * b
            if i == m:
                out[(l, k)] = out.get((l, k), ZERO) - a * b
    return {key: v for key, v in out.items() if v}


def subalgebra_of_gl(N, names, images, label):
    """Lie algebra spanned by the given gl(N) elements, brackets inherited."""
    keys = sorted({key for im in images for key in im})
    cols = [[im.get(key, ZERO) for key in keys] for im in images]
    br = {}
    for a, x in enumerate(images):
        for b, y in enumerate(images):
            z = _matrix_bracket(x, y)
            if not z:
                continue
            extra = set(z) - set(keys)
            if extra:
                raise LieAlgebraError(f"{label}: span is not closed under the bracket")
            coeffs = solve(cols, [z.get(key, ZERO) for key in keys])
            if coeffs is None:
                raise LieAlgebraError(f"{label}: span is not closed under the bracket")
            br[(a, b)] = {k: c for k, c in enumerate(coeffs) if c}
    return LieAlgebraData(names, br, gl_embedding=(N, tuple(images)), label=label)


def borel_names(N):
    """Names ``H1N, E1N, E1j..., EjN...`` of the restricted Borel basis."""
    names = [f"H1{N}" if N < 10 else f"H1,{N}", _gl_name(N, 1, N)]
    names += [_gl_name(N, 1, j) for j in range(2, N)]
    names += [_gl_name(N, j, N) for j in range(2, N)]
    return names


def make_borel_restricted(N):
    """Restricted Borel subalgebra of sl(N), dimension 2(N-1).

    Basis order: H_1N = E_11 - E_NN, E_1N, E_1j (j = 2..N-1), E_jN
    (j = 2..N-1); brackets are inherited from gl(N).
    """
    if not isinstance(N, int) or N < 2:
        raise LieAlgebraError(f"the restricted Borel subalgebra needs N >= 2, got {N!r}")
    images = [{(1, 1): ONE, (N, N): -ONE}, {(1, N): ONE}]
    images += [{(1, j): ONE} for j in range(2, N)]
    images += [{(j, N): ONE} for j in range(2, N)]
    return subalgebra_of_gl(N, borel_names(N), images, label=f"Bv({N})")


def make_L_abstract(alpha=1, gamma=1):
    """The four-generator algebra {H, A, B, E} with beta = 2 - alpha.

    [H,E] = 2E, [H,A] = alpha A, [H,B] = beta B, [A,B] = gamma E and
    E central in the Heisenberg part.
    """
    alpha = to_rational(alpha)
    gamma = to_rational(gamma)
    beta = 2 - alpha
    H, A, B, E = range(4)
    br = {(H, E): {E: Q(2)}, (H, A): {A: alpha}, (H, B): {B: beta}, (A, B): {E: gamma}}
    return LieAlgebraData(
        ["H", "A", "B", "E"],
        br,
        label=f"L(alpha={format_rational(alpha)},gamma={format_rational(gamma)})",
    )


# -- the dual algebra ---------------------------------------------------------
def _y(i, j):
    return ("Y", i, j)


def _mu_prime_rules(N, a, b):
    """Values of the deforming dual product on coordinate pairs ``(Y_a, Y_b)``.

    Returns the list of all values assigned to the ordered pair by the six
    defining rules (as sparse dicts over coordinates ``("Y", i, j)``).
    """
    (i1, j1), (i2, j2) = a, b
    out = []

    def Y(i, j):
        return {_y(i, j): ONE}

    # mu'(Y_1i, Y_1N) = -Y_1i, i > 1
    if i1 == 1 and j1 > 1 and (i2, j2) == (1, N) and (i1, j1) != (i2, j2):
        out.append({_y(1, j1): -ONE})
    # mu'(Y_1N, Y_kN) = Y_kN, k < N
    if (i1, j1) == (1, N) and j2 == N and i2 < N and (i1, j1) != (i2, j2):
        out.append(Y(i2, N))
    # mu'(Y_11, Y_1N) = mu'(Y_1N, Y_NN) = -(Y_11 - Y_NN)
    if ((i1, j1), (i2, j2)) in (((1, 1), (1, N)), ((1, N), (N, N))):
        out.append({_y(1, 1): -ONE, _y(N, N): ONE})
    # mu'(Y_1i, Y_1k) = delta_i1 Y_Nk, k, i < N
    if i1 == 1 and i2 == 1 and j1 < N and j2 < N and j1 != j2:
        out.append(Y(N, j2) if j1 == 1 else {})
    # mu'(Y_iN, Y_kN) = -delta_kN Y_i1, k, i > 1
    if j1 == N and j2 == N and i1 > 1 and i2 > 1 and i1 != i2:
        out.append({_y(i1, 1): -ONE} if i2 == N else {})
    # mu'(Y_1i, Y_kN) = delta_i1 Y_k1 - delta_kN Y_Ni - 2 delta_ik (Y_11 - Y_NN)
    if i1 == 1 and j1 < N and j2 == N and i2 > 1:
        vec = {}
        if j1 == 1:
            vec[_y(i2, 1)] = vec.get(_y(i2, 1), ZERO) + ONE
        if i2 == N:
            vec[_y(N, j1)] = vec.get(_y(N, j1), ZERO) - ONE
        if j1 == i2:
            vec[_y(1, 1)] = vec.get(_y(1, 1), ZERO) - 2
            vec[_y(N, N)] = vec.get(_y(N, N), ZERO) + 2
        out.append({k: v for k, v in vec.items() if v})
    return out


def _restrict_to_borel(N, vec):
    """Image of a gl(N)* combination in (B^v)*, in the sector coordinates.

    Coordinates vanishing on B^v are dropped; on B^v one has
    ``Y_11 = -Y_NN = (Y_11 - Y_NN) / 2``.  Keys of the result are positions
    in :func:`dual_borel_basis`.
    """
    pos = {}
    for k in range(2, N):
        pos[(k, N)] = 1 + (k - 2)
        pos[(1, k)] = N + (k - 2)
    pos[(1, N)] = 0
    out = {}
    for (_, i, j), c in vec.items():
        if (i, j) in pos:
            t, c = pos[(i, j)], c
        elif (i, j) == (1, 1):
            t, c = N - 1, c / 2
        elif (i, j) == (N, N):
            t, c = N - 1, -c / 2
        else:
            continue
        out[t] = out.get(t, ZERO) + c
    return {t: c for t, c in out.items() if c}


def dual_product(N, a, b):
    """Dual product of two gl(N)* coordinates Y_a, Y_b restricted to (B^v)*.

    ``a`` and ``b`` are index pairs.  The value is looked up directly or via
    antisymmetry; all matching rules must agree after restriction.  Raises
    ``LieAlgebraError`` when no rule covers the pair.
    """
    if a == b:
        return {}
    found = []
    for vec in _mu_prime_rules(N, a, b):
        found.append(_restrict_to_borel(N, vec))
    for vec in _mu_prime_rules(N, b, a):
        found.append({k: -v for k, v in _restrict_to_borel(N, vec).items()})
    if not found:
        raise LieAlgebraError(f"dual product of Y{a} and Y{b} is not covered by the sector rules")
    first = found[0]
    for other in found[1:]:
        if other != first:
            raise LieAlgebraError(f"conflicting dual-product rules for Y{a}, Y{b}")
    return first


def dual_borel_basis(N):
    """Coordinates of the dual restricted Borel basis as gl(N)* combinations."""
    elems = [("Y1%s" % N if N < 10 else f"Y1,{N}", {(1, N): ONE})]
    elems += [(f"Y{i}{N}" if N < 10 else f"Y{i},{N}", {(i, N): ONE}) for i in range(2, N)]
    elems += [(f"Y11-Y{N}{N}" if N < 10 else f"Y11-Y{N},{N}", {(1, 1): ONE, (N, N): -ONE})]
    elems += [(f"Y1{i}" if N < 10 else f"Y1,{i}", {(1, i): ONE}) for i in range(2, N)]
    return elems


def make_dual_borel(N):
    """The dual of the restricted Borel subalgebra with the deforming product.

    Basis {Y_1N, Y_iN, Y_11 - Y_NN, Y_1i}.  Brackets come from the
    coordinate-level rules by bilinearity followed by restriction to B^v;
    the result must satisfy Jacobi.
    """
    if not isinstance(N, int) or N < 3:
        raise LieAlgebraError(f"the dual restricted Borel algebra needs N >= 3, got {N!r}")
    elems = dual_borel_basis(N)
    names = [n for n, _ in elems]
    br = {}
    for a, (_, x) in enumerate(elems):
        for b, (_, y) in enumerate(elems):
            if a == b:
                continue
            acc = {}
            for ka, ca in x.items():
                for kb, cb in y.items():
                    for t, c in dual_product(N, ka, kb).items():
                        acc[t] = acc.get(t, ZERO) + ca * cb * c
            acc = {k: v for k, v in acc.items() if v}
            if acc:
                br[(a, b)] = acc
    g = LieAlgebraData(names, br, label=f"Bv({N})*")
    if check_jacobi(g):
        raise LieAlgebraError("internal consistency error: dual product violates Jacobi")
    return g


# -- tensors in g (x) g and the classical Yang-Baxter equation ---------------
class LieTensor:
    """An element ``sum r[i, j] e_i (x) e_j`` of g (x) g.

    Coefficients are rationals or :class:`~jtwist.scalars.XiSeries`.
    """

    def __init__(self, algebra, coeffs):
        self.algebra = algebra
        self.coeffs = {k: v for k, v in coeffs.items() if not _is_zero(v)}

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out[k] + v if k in out else v
        return LieTensor(self.algebra, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, s):
        return LieTensor(self.algebra, {k: v * s for k, v in self.coeffs.items()})

    def flip(self):
        return LieTensor(self.algebra, {(j, i): v for (i, j), v in self.coeffs.items()})

    def is_antisymmetric(self):
        return (self + self.flip()).is_zero()

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, LieTensor) and (self - other).is_zero()

    def render(self):
        if not self.coeffs:
            return "0"
        names = self.algebra.names
        parts = []
        for (i, j) in sorted(self.coeffs):
            parts.append(f"({self.coeffs[(i, j)]})*{names[i]}(x){names[j]}")
        return " + ".join(parts)

    __str__ = render


class WedgeElement(LieTensor):
    """Antisymmetric element given by coefficients of ``e_i ^ e_j`` (i < j)."""

    def __init__(self, algebra, wedge_coeffs):
        full = {}
        self.wedge_coeffs = {}
        for (i, j), v in wedge_coeffs.items():
            if i == j:
                raise LieAlgebraError("e_i ^ e_i vanishes; use i != j")
            if i > j:
                i, j, v = j, i, -v
            self.wedge_coeffs[(i, j)] = self.wedge_coeffs.get((i, j), 0) + v
        for (i, j), v in self.wedge_coeffs.items():
            full[(i, j)] = v
            full[(j, i)] = -v
        super().__init__(algebra, full)
        self.wedge_coeffs = {k: v for k, v in self.wedge_coeffs.items() if not _is_zero(v)}

    @classmethod
    def from_tensor(cls, t):
        if not t.is_antisymmetric():
            raise LieAlgebraError("tensor is not antisymmetric")
        return cls(t.algebra, {(i, j): v for (i, j), v in t.coeffs.items() if i < j})

    def render(self):
        if not self.wedge_coeffs:
            return "0"
        names = self.algebra.names
        parts = []
        for (i, j) in sorted(self.wedge_coeffs):
            parts.append(f"({self.wedge_coeffs[(i, j)]})*{names[i]}^{names[j]}")
        return " + ".join(parts)

    __str__ = render


def cybe_residual(r, algebra=None, brackets=None):
    """``[r12, r13] + [r12, r23] + [r13, r23]`` as a dict over index triples.

    The bracket may be supplied as a raw table ``{(i, j): {k: c}}`` to
    evaluate the expression for bilinear products that are not Lie brackets.
    """
    g = algebra or r.algebra
    if brackets is None:
        def br(i, j):
            return g.bracket(i, j)
    else:
        def br(i, j):
            return brackets.get((i, j), {})

    out = {}

    def add(key, v):
        if key in out:
            out[key] = out[key] + v
        else:
            out[key] = v

    items = list(r.coeffs.items())
    for (a, b), x in items:
        for (c, d), y in items:
            xy = x * y
            for k, s in br(a, c).items():  # [r12, r13]
                add((k, b, d), xy * s)
            for k, s in br(b, c).items():  # [r12, r23]
                add((a, k, d), xy * s)
            for k, s in br(b, d).items():  # [r13, r23]
                add((a, c, k), xy * s)
    return {k: v for k, v in out.items() if not _is_zero(v)}


# -- self-duality at the Lie level ---------------------------------------------
def r_hom_map(N):
    """Linear map (B^v)* -> B^v induced by the classical r-matrix at xi = 1.

    The classical element is ``r = -sum_a X_a ^ P_a`` with ``P_1 = E_1N``,
    ``P_i = E_iN``, ``X_1 = H_1N``, ``X_j = 2 E_1j``; the dual coordinates
    {Y_1N, Y_iN, Y_11 - Y_NN, Y_1i} pair with {P_1, P_i, X_1, X_i} by the
    Kronecker delta.  The map contracts the second tensor leg of ``r``.
    Returns ``(dual, borel, images)`` with ``images[k]`` the image vector of
    the k-th dual basis element.
    """
    dual = make_dual_borel(N)
    borel = make_borel_restricted(N)
    H, E = 0, 1
    e1 = {j: 2 + (j - 2) for j in range(2, N)}
    eN = {j: 2 + (N - 2) + (j - 2) for j in range(2, N)}
    P = [{E: ONE}] + [{eN[i]: ONE} for i in range(2, N)]
    X = [{H: ONE}] + [{e1[j]: Q(2)} for j in range(2, N)]
    # dual basis order: Y1N, YiN (i=2..N-1), D, Y1i (i=2..N-1)
    dual_of_P = [0] + [1 + (i - 2) for i in range(2, N)]
    dual_of_X = [N - 1] + [N + (i - 2) for i in range(2, N)]
    # r = -sum (X_a (x) P_a - P_a (x) X_a), evaluated on Y in the second leg:
    # <P_a, Y_b> = delta, <X_a, Y_b> = delta for the matching coordinates.
    images = []
    for k in range(dual.dim):
        img = {}
        for a in range(N - 1):
            if dual_of_P[a] == k:
                for i, c in X[a].items():
                    img[i] = img.get(i, ZERO) - c
            if dual_of_X[a] == k:
                for i, c in P[a].items():
                    img[i] = img.get(i, ZERO) + c
        images.append({i: c for i, c in img.items() if c})
    return dual, borel, images


def r_hom_check(N):
    """Check that the r-matrix map (B^v)* -> B^v is a Lie isomorphism.

    Bijectivity is a rank computation.  Bracket preservation is tested up
    to one overall rational scale ``s``: ``f([a, b]) = s [f(a), f(b)]`` for
    all basis pairs (``s`` is read off the first nonzero bracket; a map
    with scale ``s`` becomes a homomorphism after rescaling by ``1/s``).
    """
    from .reports import Report, timed

    rep = Report("r-hom", {"N": N})
    with timed(rep):
        dual, borel, images = r_hom_map(N)
        mat = [[img.get(i, ZERO) for i in range(borel.dim)] for img in images]
        bijective = dual.dim == borel.dim and rank(mat) == borel.dim
        scale = None
        residuals = []
        for a in range(dual.dim):
            for b in range(a + 1, dual.dim):
                lhs = {}
                for k, c in dual.bracket(a, b).items():
                    for i, v in images[k].items():
                        lhs[i] = lhs.get(i, ZERO) + c * v
                lhs = {i: v for i, v in lhs.items() if v}
                rhs = borel.bracket_vec(images[a], images[b])
                if scale is None and (lhs or rhs):
                    if not lhs or not rhs:
                        residuals.append((a, b))
                        continue
                    i0 = next(iter(rhs))
                    scale = lhs.get(i0, ZERO) / rhs[i0]
                s = scale if scale is not None else ONE
                diff = {i: lhs.get(i, ZERO) - s * rhs.get(i, ZERO) for i in set(lhs) | set(rhs)}
                if any(diff.values()):
                    residuals.append((a, b))
        ok = bijective and not residuals and scale is not None and scale != 0
        rep.status = "pass" if ok else "fail"
        rep.details = {
            "bijective": bijective,
            "scale": format_rational(scale) if scale is not None else None,
            "bracket_residual_pairs": [[dual.names[a], dual.names[b]] for a, b in residuals],
            "jacobi_violations": len(check_jacobi(dual)),
        }
        if residuals:
            a, b = residuals[0]
            rep.residual_witness = f"bracket of {dual.names[a]}, {dual.names[b]} not preserved"
        elif not bijective:
            rep.residual_witness = "map is not bijective"
    return rep


# -- JSON interface -------------------------------------------------------------
def algebra_to_json(g):
    """``{"dim", "names", "c"}`` with dense string-valued structure constants."""
    return {
        "dim": g.dim,
        "names": list(g.names),
        "c": [[[format_rational(x) for x in row] for row in plane] for plane in g.c],
    }


def algebra_from_json(doc, label=None):
    if isinstance(doc, (str, bytes)):
        doc = json.loads(doc)
    d = int(doc["dim"])
    names = doc.get("names") or [f"e{i}" for i in range(d)]
    c = doc["c"]
    if len(c) != d or any(len(row) != d for row in c) or any(len(v) != d for row in c for v in row):
        raise LieAlgebraError("structure constant array has the wrong shape")
    br = {}
    for i in range(d):
        for j in range(d):
            vec = {k: parse_rational(str(c[i][j][k])) for k in range(d)}
            vec = {k: v for k, v in vec.items() if v}
            if vec:
                br[(i, j)] = vec
    # consistency of the provided dense table is checked by the constructor
    return LieAlgebraData(names, br, label=label or "imported")


def jacobi_report(N):
    """Antisymmetry and Jacobi for gl(N), the restricted Borel algebra and its deformed dual."""
    from .reports import Report, timed

    rep = Report("jacobi", {"N": N})
    with timed(rep):
        algebras = [make_gl(N), make_borel_restricted(N)]
        if N >= 3:
            algebras.append(make_dual_borel(N))
        counts, fails = {}, []
        for g in algebras:
            bad = check_antisymmetry(g) + check_jacobi(g)
            counts[g.label] = len(bad)
            if bad:
                fails.append(f"{g.label}: violation at {bad[0]}")
        rep.details = {"violations": counts}
        if fails:
            rep.status = "fail"
            rep.residual_witness = "; ".join(fails)
    return rep

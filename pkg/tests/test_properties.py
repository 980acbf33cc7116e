"""Randomized invariants (hypothesis)."""
from functools import lru_cache

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from jtwist import _pykernel
from jtwist.kernel import BACKEND, PBWKernel
from jtwist.liealg import make_gl
from jtwist.qspace import StarAlgebra, WeylElement
from jtwist.rep import evaluate_tensor, fundamental
from jtwist.scalars import Q, XiSeries
from jtwist.twist import TwistedHopf, canonical_twist
from jtwist.uea import (
    TensorElement,
    UEAElement,
    antipode,
    antipode_map,
    apply_leg_maps,
    coproduct,
    counit,
    leg_map,
    multiply_legs,
    tensor,
)

CRIT12 = pytest.mark.criterion(
    12, "Hopf axioms, star associativity, PBW associativity, truncation coherence")
SETTINGS = settings(max_examples=50, deadline=None,
                    suppress_health_check=[HealthCheck.too_slow])

small_q = st.integers(-3, 3).map(Q) | st.sampled_from([Q(1, 2), Q(-2, 3)])


@lru_cache(maxsize=None)
def tw(N, K):
    return canonical_twist(N, K)


@lru_cache(maxsize=None)
def gl(N):
    return make_gl(N)


def monomials(dim, max_total=3):
    """Exponent tuples of total degree <= max_total (positions drawn with repetition)."""
    def build(pos):
        m = [0] * dim
        for p in pos:
            m[p] += 1
        return tuple(m)

    return st.lists(st.integers(0, dim - 1), max_size=max_total).map(build)


def elements(g, K, max_terms=3):
    """Random rank-1 elements with rational coefficients in xi^0 and xi^1."""
    term = st.tuples(monomials(g.dim), small_q, st.integers(0, min(K, 1)))

    def build(terms):
        out = TensorElement.zero(g, 1, K)
        for m, c, p in terms:
            out = out + TensorElement.from_terms(g, 1, K, {(m,): c}).shift(p)
        return out

    return st.lists(term, min_size=1, max_size=max_terms).map(build)


# -- PBW ----------------------------------------------------------------------------------
@CRIT12
@SETTINGS
@given(st.data())
def test_pbw_associativity(data):
    g = tw(3, 3).algebra
    a, b, c = (data.draw(elements(g, 3)) for _ in range(3))
    assert (a * b) * c == a * (b * c)


@CRIT12
@SETTINGS
@given(st.data())
def test_pbw_idempotence(data):
    g = tw(3, 3).algebra
    a = data.draw(elements(g, 3))
    one = UEAElement.scalar(g, 1, 3)
    assert one * a == a and a * one == a
    assert (one * a) * one == a


@SETTINGS
@given(st.data())
def test_gl_representation_property(data):
    g = gl(3)
    a, b = (data.draw(elements(g, 2, 2)) for _ in range(2))
    rho = fundamental(3)
    assert evaluate_tensor(a * b, rho=rho) == evaluate_tensor(a, rho=rho) @ evaluate_tensor(b, rho=rho)


@pytest.mark.skipif(BACKEND != "cython", reason="compiled kernel not built")
@SETTINGS
@given(st.data())
def test_pure_and_compiled_kernels_agree(data):
    g = gl(3)
    lower = {(i, j): tuple(sorted(v.items())) for (i, j), v in g._br.items() if i > j}
    pure, fast = _pykernel.PBWKernel(g.dim, lower), PBWKernel(g.dim, lower)
    a = data.draw(monomials(g.dim))
    b = data.draw(monomials(g.dim))
    assert dict(pure.mul_mono(a, b)) == dict(fast.mul_mono(a, b))


# -- Hopf axioms -----------------------------------------------------------------------------
def _counit_axiom(t, a):
    return (multiply_legs(t) == UEAElement.scalar(a.algebra, 1, a.order).scale(counit(a))
            if not counit(a).is_zero() else multiply_legs(t).is_zero())


@CRIT12
@SETTINGS
@given(st.data())
def test_classical_hopf_axioms(data):
    g = tw(3, 2).algebra
    a, b = (data.draw(elements(g, 2, 2)) for _ in range(2))
    Da = coproduct(a)
    assert coproduct(a * b) == Da * coproduct(b)
    assert leg_map(Da, "delta_id") == leg_map(Da, "id_delta")
    S = antipode_map(g, 2)
    assert _counit_axiom(apply_leg_maps(Da, [S, None]), a)
    assert _counit_axiom(apply_leg_maps(Da, [None, S]), a)
    assert antipode(a * b) == antipode(b) * antipode(a)
    assert counit(a * b) == counit(a) * counit(b)


@CRIT12
@SETTINGS
@given(st.data())
def test_twisted_hopf_axioms(data):
    t = tw(3, 3)
    hopf = TwistedHopf(t)
    cop = hopf.cop
    a, b = (data.draw(elements(t.algebra, 3, 2)) for _ in range(2))
    Da = cop(a)
    assert cop(a * b) == Da * cop(b)
    assert cop.delta_id(Da) == cop.id_delta(Da)
    assert _counit_axiom(hopf.S_on_leg(Da, 0), a)
    assert _counit_axiom(hopf.S_on_leg(Da, 1), a)
    assert hopf.S(a * b) == hopf.S(b) * hopf.S(a)


# -- star product ---------------------------------------------------------------------------
def weyl_monomials(N):
    return st.lists(st.integers(0, 1), min_size=2 * N, max_size=2 * N).map(tuple)


@CRIT12
@SETTINGS
@given(st.sampled_from([2, 3]), st.data())
def test_star_associativity(N, data):
    A = star(N)
    f, g, h = (WeylElement.monomial(N, 3, data.draw(weyl_monomials(N)), data.draw(small_q))
               for _ in range(3))
    assert A.star(A.star(f, g), h) == A.star(f, A.star(g, h))


@lru_cache(maxsize=None)
def star(N):
    return StarAlgebra(tw(N, 3))


@SETTINGS
@given(st.data())
def test_star_unit(data):
    A = star(3)
    f = WeylElement.monomial(3, 3, data.draw(weyl_monomials(3)))
    one = WeylElement.scalar(3, 3, 1)
    assert A.star(one, f) == f and A.star(f, one) == f


# -- truncation coherence ------------------------------------------------------------------
@CRIT12
@settings(max_examples=8, deadline=None)
@given(st.sampled_from([2, 3, 4]), st.integers(1, 4), st.data())
def test_truncation_coherence(N, K, data):
    Kp = data.draw(st.integers(0, K - 1))
    hi, lo = tw(N, K), tw(N, Kp)
    assert hi.F.truncate(Kp).render() == lo.F.render()
    assert hi.R.truncate(Kp).render() == lo.R.render()
    name = data.draw(st.sampled_from(hi.algebra.names))
    assert hi.coproduct()(hi.gen(name)).truncate(Kp).render() == \
        lo.coproduct()(lo.gen(name)).render()


@SETTINGS
@given(st.lists(small_q, min_size=4, max_size=4))
def test_series_truncation_coherence(coeffs):
    s = XiSeries(coeffs, 3)
    assert (s * s).truncate(1) == s.truncate(1) * s.truncate(1)


# -- flip convention --------------------------------------------------------------------------
@SETTINGS
@given(st.data())
def test_flip_convention(data):
    t = tw(3, 2)
    g = t.algebra
    a, b = (data.draw(elements(g, 2, 2)) for _ in range(2))
    assert leg_map(tensor(a, b), "swap") == tensor(b, a)
    rho = fundamental(3)
    from jtwist.rep import flip_matrix

    assert evaluate_tensor(tensor(a, b), rho=rho).conjugate(flip_matrix(3)) == \
        evaluate_tensor(tensor(b, a), rho=rho)

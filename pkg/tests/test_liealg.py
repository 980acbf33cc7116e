import itertools

import pytest
from hypothesis import given, settings, strategies as st

from jtwist.liealg import (
    LieAlgebraData,
    LieAlgebraError,
    check_antisymmetry,
    check_jacobi,
    dual_product,
    make_borel_restricted,
    make_dual_borel,
    make_gl,
    make_L_abstract,
    r_hom_check,
    algebra_from_json,
    algebra_to_json,
)
from jtwist.scalars import Q


def vec(g, **kw):
    return {g.index(k): Q(v) for k, v in kw.items()}


def test_gl2_bracket():
    g = make_gl(2)
    assert g.names == ("E11", "E12", "E21", "E22")
    assert g.bracket("E12", "E21") == vec(g, E11=1, E22=-1)
    assert g.bracket("E11", "E11") == {}


def test_gl3_bracket():
    g = make_gl(3)
    assert g.bracket("E12", "E23") == vec(g, E13=1)


def _matrix_oracle(N, a, b):
    """[E_ik, E_lm] = d_kl E_im - d_im E_lk from explicit matrix units."""
    (i, k), (l, m) = a, b
    out = {}
    if k == l:
        out[(i, m)] = out.get((i, m), 0) + 1
    if i == m:
        out[(l, k)] = out.get((l, k), 0) - 1
    return {key: v for key, v in out.items() if v}


@pytest.mark.parametrize("N", [2, 3, 4])
def test_gl_matches_matrix_units(N):
    g = make_gl(N)
    pairs = [(i, j) for i in range(1, N + 1) for j in range(1, N + 1)]
    for a, b in itertools.product(pairs, repeat=2):
        got = {g.names[k]: c for k, c in g.bracket(f"E{a[0]}{a[1]}", f"E{b[0]}{b[1]}").items()}
        want = {f"E{i}{j}": Q(c) for (i, j), c in _matrix_oracle(N, a, b).items()}
        assert got == want


def test_gl_rejects_small_n():
    with pytest.raises(LieAlgebraError):
        make_gl(1)


def test_borel_n2_is_jordanian_borel():
    g = make_borel_restricted(2)
    assert g.names == ("H12", "E12")
    assert g.bracket("H12", "E12") == vec(g, E12=2)


def test_borel_n3():
    g = make_borel_restricted(3)
    assert g.names == ("H13", "E13", "E12", "E23")
    assert g.bracket("E12", "E23") == vec(g, E13=1)
    assert g.bracket("E12", "E13") == {}


@pytest.mark.parametrize("alpha", ["0", "1", "1/3", "-2"])
def test_L_abstract_is_lie(alpha):
    g = make_L_abstract(Q(alpha), 2)
    assert check_jacobi(g) == [] and check_antisymmetry(g) == []
    assert g.bracket("H", "B") == vec(g, B=2 - Q(alpha))
    assert g.bracket("A", "B") == vec(g, E=2)


def test_L_abstract_degenerate_gamma():
    g = make_L_abstract(1, 0)
    assert g.bracket("A", "B") == {}


def test_dual_products():
    names = make_dual_borel(3).names
    named = lambda v: {names[k]: c for k, c in v.items()}
    assert named(dual_product(3, (1, 2), (1, 3))) == {"Y12": -1}
    assert named(dual_product(3, (1, 1), (1, 3))) == {"Y11-Y33": -1}
    assert dual_product(4, (1, 2), (1, 3)) == {}


@pytest.mark.parametrize("N", [3, 4])
def test_dual_borel_jacobi(N):
    g = make_dual_borel(N)
    assert g.dim == 2 * (N - 1)
    assert check_jacobi(g) == []


def test_jacobi_detects_perturbation():
    g = make_gl(3)
    br = {k: dict(v) for k, v in g._br.items()}
    br[(0, 1)] = dict(br.get((0, 1), {}))
    br[(0, 1)][2] = br[(0, 1)].get(2, 0) + 1
    br[(1, 0)] = {k: -c for k, c in br[(0, 1)].items()}
    bad = LieAlgebraData(g.names, br)
    assert check_jacobi(bad) != []


@pytest.mark.parametrize("N", [3, 4])
def test_r_hom_isomorphism(N):
    r = r_hom_check(N)
    assert r.passed
    assert r.details["scale"] == "-1"


def test_json_round_trip():
    g = make_borel_restricted(4)
    h = algebra_from_json(algebra_to_json(g))
    assert h.names == g.names
    assert all(h.bracket(i, j) == g.bracket(i, j) for i in range(g.dim) for j in range(g.dim))


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 4), st.data())
def test_gl_jacobi_on_random_triples(N, data):
    g = make_gl(N)
    i, j, k = (data.draw(st.integers(0, g.dim - 1)) for _ in range(3))

    def br(x, y):
        out = {}
        for a, ca in x.items():
            for b, cb in y.items():
                for c, v in g.bracket(a, b).items():
                    out[c] = out.get(c, 0) + ca * cb * v
        return {c: v for c, v in out.items() if v}

    def add(*vs):
        out = {}
        for v in vs:
            for c, x in v.items():
                out[c] = out.get(c, 0) + x
        return {c: v for c, v in out.items() if v}

    e = lambda n: {n: Q(1)}
    total = add(br(br(e(i), e(j)), e(k)), br(br(e(j), e(k)), e(i)), br(br(e(k), e(i)), e(j)))
    assert total == {}

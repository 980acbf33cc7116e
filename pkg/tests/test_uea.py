import pytest

from jtwist.liealg import make_borel_restricted, make_gl, make_L_abstract
from jtwist.scalars import NotInvertibleError, Q, XiSeries
from jtwist.uea import (
    NotXiPositiveError,
    RankMismatchError,
    TensorElement,
    UEAElement,
    antipode,
    commutator,
    coproduct,
    counit,
    exp_positive,
    invert,
    leg_map,
    sigma,
    tensor,
)


def gens(g, K):
    return {n: UEAElement.generator(g, n, K) for n in g.names}


def one(g, K):
    return UEAElement.scalar(g, 1, K)


def test_gl2_normal_ordering():
    g = make_gl(2)
    e = gens(g, 0)
    assert e["E21"] * e["E12"] == e["E12"] * e["E21"] + e["E22"] - e["E11"]
    assert (one(g, 0) * e["E12"]) == e["E12"]


def test_ordered_square_is_a_single_monomial():
    g = make_gl(3)
    sq = gens(g, 0)["E12"] * gens(g, 0)["E12"]
    assert sq.nterms() == 1


def test_commutator_basics():
    g = make_borel_restricted(3)
    e = gens(g, 2)
    assert commutator(e["E12"], e["E12"]).is_zero()
    assert commutator(e["E12"], e["E23"]) == e["E13"]


def test_h_sigma_relation():
    g = make_borel_restricted(3)
    K = 5
    s = sigma(g, K)
    H = gens(g, K)["H13"]
    assert commutator(H, s) == one(g, K) - exp_positive(s.scale(-2))


def test_normalized_a_b():
    g = make_L_abstract(1, 2)
    K = 3
    e = gens(g, K)
    At = e["A"].scale(Q(1, 2))
    assert commutator(At, e["B"]) == e["E"]


def test_coproduct_examples():
    g = make_borel_restricted(3)
    K = 2
    E, I = gens(g, K)["E13"], one(g, K)
    assert coproduct(E) == tensor(E, I) + tensor(I, E)
    assert coproduct(E * E) == tensor(E * E, I) + tensor(E, E).scale(2) + tensor(I, E * E)
    assert coproduct(I) == TensorElement.unit(g, 2, K)


def test_counit_examples():
    g = make_borel_restricted(2)
    K = 2
    E = gens(g, K)["E12"]
    assert counit(one(g, K)) == XiSeries.one(K)
    assert counit(E).is_zero()
    assert counit(one(g, K) + E.shift(1)) == XiSeries.one(K)


def test_antipode_examples():
    g = make_borel_restricted(3)
    e = gens(g, 1)
    assert antipode(e["E12"]) == -e["E12"]
    # S(E12 E23) = E23 E12, and [E12, E23] = E13 puts the correction at -E13
    assert antipode(e["E12"] * e["E23"]) == e["E23"] * e["E12"]
    assert antipode(e["E12"] * e["E23"]) == e["E12"] * e["E23"] - e["E13"]
    assert antipode(one(g, 1)) == one(g, 1)


def test_exp_examples():
    g = make_borel_restricted(2)
    K = 2
    E = gens(g, K)["E12"]
    x = E.shift(1)
    assert exp_positive(x) == one(g, K) + x + (x * x).scale(Q(1, 2))
    assert exp_positive(TensorElement.zero(g, 1, K)) == one(g, K)
    assert exp_positive(x) * exp_positive(-x) == one(g, K)
    with pytest.raises(NotXiPositiveError):
        exp_positive(E)


def test_sigma_examples():
    g = make_borel_restricted(2)
    K = 3
    E = gens(g, K)["E12"]
    s = sigma(g, K)
    expected = E.shift(1) - (E * E).shift(2) + (E * E * E).shift(3).scale(Q(4, 3))
    assert s == expected
    assert exp_positive(s.scale(2)) == one(g, K) + E.shift(1).scale(2)
    assert counit(s).is_zero()


def test_tensor_products():
    g = make_borel_restricted(3)
    K = 1
    e, I = gens(g, K), one(g, K)
    x, y = e["E12"], e["E23"]
    assert tensor(x, I) * tensor(I, y) == tensor(x, y)
    assert tensor(x, I) * tensor(x, I) == tensor(x * x, I)


def test_leg_maps():
    g = make_borel_restricted(3)
    K = 1
    e, I = gens(g, K), one(g, K)
    x, y = e["E12"], e["E23"]
    assert leg_map(tensor(x, y), "embed_13") == tensor(x, I, y)
    assert leg_map(tensor(x, y), "embed_12") == tensor(x, y, I)
    assert leg_map(tensor(x, y), "embed_23") == tensor(I, x, y)
    assert leg_map(tensor(x, y), "swap") == tensor(y, x)
    assert leg_map(tensor(x, I), "delta_id") == tensor(x, I, I) + tensor(I, x, I)
    with pytest.raises(ValueError):
        leg_map(tensor(x, y), "bogus")
    with pytest.raises(RankMismatchError):
        leg_map(tensor(x, y, I), "delta_id")


def test_invert_geometric():
    g = make_borel_restricted(2)
    K = 3
    E = gens(g, K)["E12"]
    EE = tensor(E, E).shift(1)
    u = TensorElement.unit(g, 2, K)
    expected = u - EE + EE * EE - EE * EE * EE
    assert invert(u + EE) == expected
    assert invert(u) == u
    with pytest.raises(NotInvertibleError):
        invert(tensor(E, one(g, K)))


def test_truncation_commutes_with_product():
    g = make_borel_restricted(3)
    s5 = sigma(g, 5)
    H5 = gens(g, 5)["H13"]
    assert (H5 * s5).truncate(2) == gens(g, 2)["H13"] * sigma(g, 2)

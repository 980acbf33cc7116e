import pytest

from jtwist.qspace import (
    REALIZATIONS,
    StarAlgebra,
    WeylElement,
    check_qspace_relations,
    covariance_residual,
    relation_catalogue,
)
from jtwist.twist import canonical_twist


@pytest.fixture(scope="module")
def A3():
    return StarAlgebra(canonical_twist(3, 3))


def test_weyl_normal_ordering():
    N, K = 2, 0
    x1, d1 = WeylElement.x(N, 1, K), WeylElement.d(N, 1, K)
    one = WeylElement.monomial(N, K, (0,) * (2 * N))
    assert d1 * x1 == x1 * d1 + one
    assert one * x1 == x1
    # d^2 x^2 = x^2 d^2 + 4 x d + 2
    lhs = d1 * d1 * x1 * x1
    assert lhs == x1 * x1 * d1 * d1 + (x1 * d1).scale(4) + one.scale(2)


def test_commutative_mode():
    x1 = WeylElement.x(2, 1, 0, weyl=False)
    d1 = WeylElement.d(2, 1, 0, weyl=False)
    assert d1 * x1 == x1 * d1


def test_classical_limit_is_the_commutative_product():
    A = StarAlgebra(canonical_twist(3, 0))
    x1, x3 = A.x(1), A.x(3)
    assert A.star(x1, x3) == x1 * x3
    assert A.commutator(x1, x3).is_zero()


def test_coordinate_relations_frozen(A3):
    x1, x2, x3 = A3.x(1), A3.x(2), A3.x(3)
    assert A3.commutator(x1, x3) == (x3 * x3).shift(1)
    assert A3.commutator(x1, x2) == (x2 * x3).shift(1).scale(2)
    assert A3.commutator(x2, x3).is_zero()


@pytest.mark.parametrize("N", [2, 3, 4])
def test_consistent_reading_holds(N):
    r = check_qspace_relations(N, 3, reading="consistent")
    assert r.passed, r.residual_witness


@pytest.mark.parametrize("N,expected", [
    (2, ["x.p", "[d2,x1]"]),
    (3, ["x.p", "[d3,x1]", "[d2,x2]"]),
    (4, ["x.p", "[d4,x1]", "[d2,x2]", "[d3,x3]"]),
])
def test_displayed_reading_conflicts(N, expected):
    r = check_qspace_relations(N, 3, reading="displayed")
    assert not r.passed
    assert sorted(r.details["displayed_failures"]) == sorted(expected)


def test_catalogue_covers_every_table():
    tables = {r.table for r in relation_catalogue(3, 3)}
    assert {"coordinates", "momenta", "derivatives", "cross", "invariant",
            "derivative cross"} <= tables


def test_vector_realization_fails():
    r = check_qspace_relations(3, 3, reading="consistent", realization="vector")
    assert not r.passed


def test_dual_realization_with_flip_matches_reflected():
    tw = canonical_twist(3, 3)
    A = StarAlgebra(tw, realization="reflected")
    B = StarAlgebra(tw, realization="dual", flip=True)
    for i in range(1, 4):
        for j in range(1, 4):
            assert A.commutator(A.x(i), A.x(j)) == B.commutator(B.x(i), B.x(j))
            assert A.commutator(A.d(i), A.x(j)) == B.commutator(B.d(i), B.x(j))
    assert set(REALIZATIONS) >= {"vector", "reflected", "dual"}


def test_covariance(A3):
    tw = A3.twist
    x1, x2, d1 = A3.x(1), A3.x(2), A3.d(1)
    for name in tw.algebra.names:
        h = tw.gen(name)
        for f, g in ((x1, x2), (x2, d1), (x1 * x1, x2)):
            assert covariance_residual(A3, h, f, g).is_zero()

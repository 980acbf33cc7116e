"""Acceptance criteria, one marked group per criterion.

The summary section "acceptance criteria" at the end of the pytest run prints
one PASS/FAIL line per criterion.
"""
import time

import pytest

from jtwist import inhom, liealg, qspace, rep, twist
from jtwist.twist import TwistSpec
from jtwist.uea import AlgebraMap, UEAElement, apply_leg_maps

def crit(n, title, **kw):
    return pytest.mark.criterion(n, title, **kw)


ORDERS = {2: 4, 3: 4, 4: 4}


# 1 ----------------------------------------------------------------------
@crit(1, "twist equation residual zero, N in {2,3,4}, K=4, under 5 minutes")
@pytest.mark.parametrize("N", [2, 3, 4])
def test_c01_twist_equation(N):
    t0 = time.perf_counter()
    variant = "jordanian_only" if N == 2 else "extended_multi"
    F = twist.Twist(TwistSpec(variant, N, ORDERS[N])).F
    assert twist.check_twist_equation(F).is_zero()
    assert time.perf_counter() - t0 < 300


@crit(1, "twist equation residual zero, N in {2,3,4}, K=4, under 5 minutes")
@pytest.mark.parametrize("N", [3, 4])
def test_c01_single_extension_factor(N):
    F = twist.Twist(TwistSpec("extended_single", N, 4)).F
    assert twist.check_twist_equation(F).is_zero()


# 2 ----------------------------------------------------------------------
@crit(2, "factorizability holds for F, and f-twist1 fails for the reversed-form factor")
@pytest.mark.parametrize("N", [2, 3, 4])
def test_c02_factorizable(N, twists):
    f1, f2 = twist.check_factorizable(twists(N, ORDERS[N]).F)
    assert f1.is_zero() and f2.is_zero()


@crit(2, "factorizability holds for F, and f-twist1 fails for the reversed-form factor")
@pytest.mark.parametrize("N", [3, 4])
def test_c02_reversed_factor_not_factorizable(N):
    d = twist.factorizable_report(TwistSpec("extended_multi", N, 4)).details
    assert d["Phi1_tilde_twist_equation_zero"]
    assert d["Phi1_tilde_f1_nonzero"]


# 3 ----------------------------------------------------------------------
@crit(3, "twisted coproducts match closed forms, including the seven-term E32 display")
@pytest.mark.parametrize("N", [2, 3, 4])
def test_c03_twisted_coproducts(N):
    r = twist.coproducts_report(N, ORDERS[N])
    assert r.passed, r.residual_witness
    assert all(r.details["matched"].values())
    if N == 3:
        assert r.details["matched"]["E32"]


# 4 ----------------------------------------------------------------------
@crit(4, "twisted antipodes match closed forms for sigma, E1i, EiN, E1N, H1N")
@pytest.mark.parametrize("N", [2, 3, 4])
def test_c04_twisted_antipodes(N):
    r = twist.antipodes_report(N, ORDERS[N])
    assert r.passed, r.residual_witness
    names = set(r.details["matched"])
    assert {"sigma", f"H1{N}", f"E1{N}"} <= names
    assert all(r.details["matched"].values())


# 5 ----------------------------------------------------------------------
@crit(5, "QYBE and R21 R = 1, universally and in the fundamental representation")
@pytest.mark.parametrize("N", [2, 3, 4])
def test_c05_universal(N):
    assert twist.triangular_report(N, ORDERS[N]).passed
    q = twist.qybe_report(N, ORDERS[N])
    assert q.passed and q.details["qybe_zero"]


@crit(5, "QYBE and R21 R = 1, universally and in the fundamental representation")
@pytest.mark.parametrize("N", [2, 3, 4])
def test_c05_fundamental(N):
    d = rep.matrix_checks(N, ORDERS[N]).details
    assert d["triangular"] and d["qybe"] and d["flip_convention"]


# 6 ----------------------------------------------------------------------
@crit(6, "first-order part of R is the classical r; CYBE for r0 and r_h")
@pytest.mark.parametrize("N", [3, 4])
def test_c06_cybe(N):
    r = twist.cybe_report(N, 4)
    assert r.passed, r.residual_witness
    assert r.details["r0_residual_terms"] == 0
    if N == 3:
        assert r.details["rh_residual_terms"] == {"1": 0, "2": 0, "1/2": 0}


@crit(6, "first-order part of R is the classical r; CYBE for r0 and r_h")
def test_c06_extracted_r_n3(twists):
    w = liealg.WedgeElement.from_tensor(twist.classical_r(twists(3, 4).F))
    assert w.render() == "(-1)*H13^E13 + (-2)*E12^E23"


# 7 ----------------------------------------------------------------------
@crit(7, "R equals the double-sum expansion, N in {2,3}, K >= 3")
@pytest.mark.parametrize("N,K", [(2, 3), (2, 4), (3, 3), (3, 4)])
def test_c07_r_expansion(N, K):
    r = twist.check_r_basis_expansion(N, K)
    assert r.passed, r.residual_witness


# 8 ----------------------------------------------------------------------
@crit(8, "dual bracket satisfies Jacobi; r-hom is a Lie isomorphism, N in {3,4}")
@pytest.mark.parametrize("N", [3, 4])
def test_c08_dual_and_r_hom(N):
    assert liealg.check_jacobi(liealg.make_dual_borel(N)) == []
    r = liealg.r_hom_check(N)
    assert r.passed
    assert r.details["bijective"] and r.details["bracket_residual_pairs"] == []


# 9 ----------------------------------------------------------------------
@crit(9, "quantum-space relations as displayed, N=3, K=3",
      note="x.p, [d3,x1] and [d2,x2] as displayed contradict the other tables; "
           "their consistent forms hold (test_c09_qspace_consistent_reading)")
@pytest.mark.xfail(strict=True, reason="three displayed relations contradict the rest of the "
                   "tables; see the decisions ledger")
def test_c09_qspace_displayed():
    r = qspace.check_qspace_relations(3, 3, reading="displayed")
    assert r.passed, r.details["displayed_failures"]


def test_c09_qspace_consistent_reading():
    r = qspace.check_qspace_relations(3, 3, reading="consistent")
    assert r.passed, r.residual_witness


def test_c09_displayed_failures_are_exactly_the_known_ones():
    r = qspace.check_qspace_relations(3, 3, reading="displayed")
    assert sorted(r.details["displayed_failures"]) == sorted(["x.p", "[d3,x1]", "[d2,x2]"])


# 10 ---------------------------------------------------------------------
@crit(10, "theta is an anti-automorphism and (theta x theta)(F) = F^-1, N in {2,3}")
@pytest.mark.parametrize("N", [2, 3])
def test_c10_real_form(N):
    r = twist.real_form_check(N, 4)
    assert r.passed, r.residual_witness


# 11 ---------------------------------------------------------------------
VALID = [inhom.seed_1d(), inhom.borel_split(1), inhom.abstract_split("1/3"),
         inhom.abstract_split(3)]
PERTURBED = [
    inhom.borel_split(1).perturbed({(1, 2, 2): 1}),
    inhom.borel_split(1).perturbed({(2, 1, 2): "1/2"}),
    inhom.borel_split(1).perturbed({(1, 2, 1): 1}),
    inhom.abstract_split(3).perturbed({(2, 1, 1): -1}),
]


@crit(11, "validate_action iff CYBE; cocycle twists; closed forms")
@pytest.mark.parametrize("Lc", VALID + PERTURBED, ids=lambda L: L.label)
def test_c11_validate_iff_cybe(Lc):
    valid = inhom.validate_action(Lc).passed
    cybe_ok = not inhom.cybe_inhom_residual(Lc)
    assert valid == cybe_ok
    assert valid == (Lc in VALID)


@crit(11, "validate_action iff CYBE; cocycle twists; closed forms")
@pytest.mark.parametrize("Lc", VALID, ids=lambda L: L.label)
def test_c11_cocycle_twist(Lc):
    r = inhom.check_cocycle_identities(Lc, 4)
    assert r.passed, r.residual_witness


@crit(11, "validate_action iff CYBE; cocycle twists; closed forms")
@pytest.mark.parametrize("Lc", VALID, ids=lambda L: L.label)
def test_c11_closed_forms(Lc):
    phi, psi = inhom.phi_psi(Lc, 4)
    assert phi.compose(psi).is_identity() and psi.compose(phi).is_identity()
    assert inhom.phi_coboundary(Lc, 4).render() == phi.render()


@crit(11, "validate_action iff CYBE; cocycle twists; closed forms")
def test_c11_split_matches_borel_twist(twists):
    """For alpha=1 the cocycle twist is the extended twist on B(3) under H1,H2,X1,X2 -> H13,E12,E13,2E23."""
    ct = inhom.CocycleTwist(inhom.borel_split(1), 4)
    tw = twists(3, 4)
    g = tw.algebra
    images = [UEAElement.generator(g, "H13", 4), UEAElement.generator(g, "E12", 4),
              UEAElement.generator(g, "E13", 4), UEAElement.generator(g, "E23", 4).scale(2)]
    phi = AlgebraMap(ct.algebra, g, images)
    assert phi.check_morphism() == []
    assert apply_leg_maps(ct.F, [phi, phi]) == tw.F


# 12 ---------------------------------------------------------------------
@crit(12, "Hopf axioms, star associativity, PBW associativity, truncation coherence")
@pytest.mark.parametrize("N", [2, 3, 4])
def test_c12_hopf_axioms(N):
    r = twist.hopf_axioms_report(N, ORDERS[N])
    assert r.passed, r.residual_witness

# The randomized criterion-12 suites (star associativity, PBW, truncation) carry
# the same marker in test_properties.py.

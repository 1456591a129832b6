from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ospq import covariant as cov
from ospq.covariant import COVARIANT_PARITY, parse_free


def F(text: str):
    return parse_free(text, COVARIANT_PARITY)


def same(pres, lhs: str, rhs: str) -> bool:
    return (pres.normal_form(pres.parse(lhs)) - pres.normal_form(pres.parse(rhs))).is_zero()


def test_composite_radius_l1():
    # the CGC-weighted object comes out as minus the familiar quadratic
    quad = F("q^(1/2)*zm1*z1 + z0^2 - q^(-1/2)*z1*zm1")
    assert cov.composite_object(1, 0, 0, 0) == -quad
    assert cov.composite_relation(1, 0, 0, 0) == -quad - F("r")


def test_composite_radius_l2_matches_sphere_radius():
    quad = F(cov.SPHERE_RADIUS)
    assert cov.composite_object(2, 0, 0, 0) in (quad, -quad)
    assert cov.composite_relation(2, 0, 0, 0) == cov.composite_object(2, 0, 0, 0) - F("r")


def test_unacceptable_top_component():
    assert cov.composite_relation(2, 0, 4, 4) == F("Y2*Y2")
    assert cov.is_unacceptable(2, 0, 4)
    with pytest.raises(ValueError):
        cov.composite_relation(2, 0, 4, 4, allow_unacceptable=False)
    for key in [(1, 1, 1), (1, 0, 2)]:
        assert cov.is_unacceptable(*key)
    assert not cov.is_unacceptable(1, 0, 0)


def test_composite_argument_bounds():
    with pytest.raises(ValueError):
        cov.composite_relation(1, 0, 3, 0)
    with pytest.raises(ValueError):
        cov.composite_relation(1, 0, 1, 2)


def test_l_equals_ell_uses_xi():
    p = cov.composite_relation(1, 0, 1, 1, xi="xi_odd")
    assert p.coefficient(("z1",)) == -cov.parse_scalar("xi_odd")


@pytest.mark.parametrize("ell, lam, L", [(1, 0, 0), (1, 0, 1), (1, 1, 2), (2, 0, 2), (2, 0, 3)])
def test_coaction_covariance(ell, lam, L):
    assert cov.verify_coaction_covariance(ell, lam, L)


def test_scalar_coaction_of_radius():
    e = cov.composite_object(1, 0, 0, 0)
    img = cov.coaction(e, 1, 0)
    assert set(img) <= set(e.terms)
    for w, c in e.terms.items():
        assert img[w] == cov.afun.NCPoly.scalar(c)


def test_superspace0_rules():
    p = cov.superspace0()
    assert same(p, "z1*z0", "q*z0*z1")
    assert same(p, "z0*z0", "-q^-1*[2]*z1*zm1 - q^-1*r")
    assert cov.consistency_check(p).passed


def test_superspace0_odd_xi_fails_diamonds():
    rep = cov.consistency_check(cov.superspace0(xi="xi_odd"))
    assert not rep.b_ok
    assert rep.failing_diamonds()


def test_superspace1_variants():
    for kind in ("L2_only", "with_radius"):
        p = cov.superspace1(kind)
        assert same(p, "theta1*theta1", "0")
        assert cov.consistency_check(p).passed
    p = cov.superspace1("with_radius")
    assert same(p, "theta1*thetam1 + thetam1*theta1", "-[2]/[3]*r")
    assert cov.verify_primed_basis()
    with pytest.raises(ValueError):
        cov.superspace1("other")


def test_supersphere_rules():
    p = cov.supersphere()
    assert same(p, "Y2*Y1", "q^2*Y1*Y2")
    assert same(p, "Y0*Y0", "q^-1*[4]/[2]*Y2*Ym2 - q^(-1/2)*(q + q^-1)*mu12*Y1*Ym1 - q^(-3/2)*[3]!/[6]*xi*Y0")


def test_supersphere_consistent_on_tied_radius():
    assert cov.consistency_check(cov.supersphere(r="([3]!/[6])^2*xi^2")).passed
    assert cov.consistency_check(cov.supersphere(r=0, xi=0)).passed


def test_raw_sphere_l23_inconsistent():
    assert not cov.consistency_check(cov.sphere_raw_presentation((2, 3))).passed


def test_raw_sphere_relation_counts():
    assert [len(cov.raw_sphere_relations(L)) for L in (1, 2, 3)] == [3, 5, 7]
    first = cov.raw_sphere_relations(3)[0].poly
    assert first == F("q^(-1)*Y2*Y1 - q*Y1*Y2")
    with pytest.raises(ValueError):
        cov.raw_sphere_relations(4)


def test_printed_relations_are_composites():
    factors = dict(cov.printed_composite_factors())
    assert len(factors) == 21
    assert all(f is not None and f.is_rational() for f in factors.values())


def test_linear_combination_certificates():
    ok, certs = cov.verify_linear_combination()
    assert ok and len(certs) == 15
    by = {c.label: c for c in certs}
    assert set(by["Y2Y1"].coefficients) == {"L3_3"}


def test_classical_limits():
    for p in (cov.superspace0(), cov.superspace1("with_radius"), cov.supersphere()):
        assert all(ok for _, ok in cov.classical_limit_ok(p))


def test_export_load_roundtrip():
    for p in (cov.superspace0(), cov.superspace1("with_radius"), cov.supersphere()):
        q = cov.load_presentation(cov.export_presentation(p))
        assert cov.presentations_equal(p, q)
        assert cov.consistency_check(q).passed == cov.consistency_check(p).passed


def test_load_rejects_garbage():
    with pytest.raises(ValueError):
        cov.load_presentation("generators: x:0\nrule: x*x 0\n")
    with pytest.raises(ValueError):
        cov.load_presentation("generators: x:0\nrule: y*y -> 0\n")


words = st.lists(st.sampled_from(["z1", "z0", "zm1"]), min_size=1, max_size=4)


@settings(max_examples=40)
@given(words, words)
def test_superspace_normal_form_is_multiplicative(u, v):
    p = cov.superspace0()
    a, b = p.parse("*".join(u)), p.parse("*".join(v))
    assert p.normal_form(p.normal_form(a) * p.normal_form(b)) == p.normal_form(a * b)
    nf = p.normal_form(a * b)
    assert all(p.is_normal(w) for w in nf.terms)

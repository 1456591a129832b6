from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ospq import afun, realize
from ospq.expr import parse_scalar
from ospq.realize import OscPoly, parse_osc
from ospq.scalar import eval_numeric


def test_oscillator_relations():
    assert parse_osc("a*abar") == parse_osc("1 + q^-2*abar*a")
    assert parse_osc("c*abar") == parse_osc("q^-1*abar*c")
    assert parse_osc("c*c") == parse_osc("q^-1*[2]*abar*a + 1/varpi")


def test_oscillator_parity():
    c = OscPoly.gen("c")
    assert realize.OscMonomial(0, 0, 1).parity == 1
    assert all(m.eps in (0, 1) for m in (c * c * c).terms)


def test_superplane_isomorphism():
    assert realize.superplane_r() == parse_scalar("-q/varpi")
    assert realize.superplane_iso_check()


def test_oscillator_sphere():
    assert realize.oscillator_r() == parse_scalar("q^2/varpi^2*[4]/[3]!")
    res = realize.oscillator_sphere_residuals()
    assert len(res) == 16
    assert all(v.is_zero() for v in res.values())


def test_embedding_images_and_parameters():
    k3 = afun.kappas()[2]
    y2 = realize.sphere_images()["Y2"]
    want = afun.parse_afun("a*a").scale(parse_scalar("g1")) + afun.parse_afun("a*c").scale(
        parse_scalar("g2") * k3) + afun.parse_afun("c*c").scale(parse_scalar("g3"))
    assert y2 == want
    assert realize.embedding_r() == parse_scalar("[2]^2*g2^2")
    assert realize.embedding_xi() == parse_scalar("[6]/[3]*g2")


def test_embedding_residuals_vanish():
    emb = realize.embed_sphere()
    assert set(emb.residuals) >= {"radius", "Y2Y1", "Y0Y0_c"}
    assert emb.ok


def test_g_constraint_reduction():
    x = parse_scalar("g1^(1/2)*g3^(1/2)")
    assert realize.reduce_g(x) == parse_scalar("sqrt([3]!/[4])*g2")
    assert realize.reduce_g(parse_scalar("g1*g3")) == parse_scalar("[3]!/[4]*g2^2")
    assert realize.reduce_g(parse_scalar("g1")) == parse_scalar("g1")


def test_twisted_primitive():
    assert realize.verify_twisted_coproduct()
    rep = realize.twisted_primitive_annihilation()
    assert rep.ok
    assert set(rep.generators) == {"Y2", "Y1", "Y0", "Ym1", "Ym2"}


def test_fock_weights_satisfy_ladder():
    q = Fraction(1, 2)
    w = realize.fock_weights(12, q)
    assert w[0] == 0 and w[1] == 1
    for n in range(1, 12):
        assert abs(w[n] - sum(mpmath.mpf(4) ** t for t in range(n))) < mpmath.mpf(10) ** -40


@pytest.fixture(scope="module")
def fock16():
    return realize.fock_representation(cutoff=16, q=Fraction(1, 2), precision=50)


def test_fock_vacuum(fock16):
    n_op = fock16.abar * fock16.a
    assert all(abs(n_op.entries.get((i, i), 0)) == 0 for i in fock16.level_states(0))


def test_fock_relations_and_sphere(fock16):
    assert max(fock16.residuals.values()) < mpmath.mpf(10) ** -25
    assert max(realize.fock_sphere_residuals(fock16).values()) < mpmath.mpf(10) ** -25
    lo, hi, off = realize.fock_radius(fock16)
    r = eval_numeric(realize.oscillator_r(), Fraction(1, 2), precision=fock16.dps)
    assert abs(lo - r) < mpmath.mpf(10) ** -25 and abs(hi - r) < mpmath.mpf(10) ** -25
    assert off < mpmath.mpf(10) ** -25


def test_fock_rejects_bad_input():
    with pytest.raises(ValueError):
        realize.fock_representation(cutoff=4)
    with pytest.raises(ValueError):
        realize.fock_representation(cutoff=10, q=Fraction(3, 2))


osc_words = st.lists(st.sampled_from(["abar", "a", "c"]), min_size=1, max_size=4).map("*".join)


@settings(max_examples=40)
@given(osc_words, osc_words, osc_words)
def test_oscillator_product_associative(x, y, z):
    a, b, c = parse_osc(x), parse_osc(y), parse_osc(z)
    assert (a * b) * c == a * (b * c)

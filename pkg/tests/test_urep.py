from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ospq import urep
from ospq.expr import parse_scalar
from ospq.scalar import Scalar, s_pow, sqrt_scalar
from ospq.urep import GradedMatrix, UWord, parse_uword, rep_generator

ZERO = Scalar()


def _diag(M: GradedMatrix):
    return [M[i, i] for i in range(M.shape[0])]


def test_k_on_spin_one():
    K = rep_generator("K", 1, 0)
    assert _diag(K) == [s_pow(1), Scalar.const(1), s_pow(-1)]
    assert all(K[i, j].is_zero() for i in range(3) for j in range(3) if i != j)


def test_vplus_on_spin_one():
    vp = rep_generator("v+", 1, 0)
    x = sqrt_scalar(parse_scalar("[2]*rho"))
    assert vp[0, 1] == x and vp[1, 2] == x
    assert sum(1 for _ in vp.nonzero()) == 2


def test_vminus_on_spin_two():
    vm = rep_generator("v-", 2, 0)
    want = ["-sqrt([4]*rho)", "sqrt([3]!*rho)", "-sqrt([3]!*rho)", "sqrt([4]*rho)"]
    assert [vm[i + 1, i] for i in range(4)] == [parse_scalar(w) for w in want]
    assert sum(1 for _ in vm.nonzero()) == 4


def test_trivial_rep():
    K = rep_generator("K", 0, 1)
    assert K.shape == (1, 1) and K[0, 0] == Scalar.const(1)


@pytest.mark.parametrize("ell", range(0, 5))
@pytest.mark.parametrize("lam", [0, 1])
def test_relations_grade_star_casimir(ell, lam):
    assert urep.verify_defining_relations(ell, lam)
    assert urep.verify_grade_star(ell, lam)
    want = parse_scalar(f"((q^({2 * ell + 1}/2) - q^(-{2 * ell + 1}/2))/(q^4 - q^(-4)))^2")
    assert urep.casimir(ell, lam).scalar_value() == want


@pytest.mark.parametrize("g", urep.GENERATORS)
def test_entries_are_even(g):
    for ell in range(0, 4):
        for _, _, a in rep_generator(g, ell, 0).nonzero():
            assert a.parity() == 0


@pytest.mark.parametrize("l1, l2", [(0, 1), (1, 1), (1, 2), (2, 2)])
def test_tensor_rep_satisfies_relations(l1, l2):
    assert urep.check_relations(lambda g: urep.tensor_rep(g, l1, l2, 0))


def test_tensor_k_is_diagonal_weight():
    K = urep.tensor_rep("K", 1, 1, 0)
    basis = urep.tensor_basis(1, 1)
    assert _diag(K) == [s_pow(m1 + m2) for m1, m2 in basis]


def test_tensor_vplus_kills_top():
    vp = urep.tensor_rep("v+", 1, 1, 0)
    top = urep.tensor_basis(1, 1).index((1, 1))
    assert all(vp[i, top].is_zero() for i in range(vp.shape[0]))


def test_uword_parse_and_matrix():
    w = parse_uword("v+*K")
    assert list(w.terms) == [("v+", "K")]
    M = w.matrix(1, 0)
    assert M == rep_generator("v+", 1, 0) @ rep_generator("K", 1, 0)


words = st.lists(st.sampled_from(urep.GENERATORS), min_size=0, max_size=4)


@given(words, words)
def test_uword_matrix_is_multiplicative(u, v):
    a = UWord({tuple(u): Scalar.const(1)})
    b = UWord({tuple(v): Scalar.const(1)})
    assert (a * b).matrix(1, 1) == a.matrix(1, 1) @ b.matrix(1, 1)

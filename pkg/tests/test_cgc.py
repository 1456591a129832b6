from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ospq import cgc
from ospq.expr import parse_scalar
from ospq.scalar import Scalar


def test_printed_values():
    assert cgc.cgc_closed(1, 1, 0, 1, -1, 0) == parse_scalar("q^(-1/2)/sqrt([3])")
    assert cgc.cgc_closed(1, 1, 2, 1, 1, 0) == Scalar.const(1)
    assert cgc.cgc_closed(2, 2, 0, 0, 0, 0) == parse_scalar("-1/sqrt([5])")


def test_lowering_oracle_examples():
    assert cgc.cgc_lowering(1, 1, 0, 1, -1, 0) == parse_scalar("q^(-1/2)/sqrt([3])")
    assert cgc.cgc_lowering(1, 1, 3, 1, 1, 0).is_zero()
    assert cgc.highest_weight_vector(1, 1, 2, 0)[(1, 1)] == Scalar.const(1)


@pytest.mark.parametrize("l1, l2", list(itertools.product(range(3), repeat=2)))
def test_three_routes_agree(l1, l2):
    for l in range(abs(l1 - l2), l1 + l2 + 1):
        for m1 in range(-l1, l1 + 1):
            for m2 in range(-l2, l2 + 1):
                if not cgc.in_domain(l1, l2, l, m1, m2):
                    continue
                a = cgc.cgc_closed(l1, l2, l, m1, m2, 0)
                assert a == cgc.cgc_lowering(l1, l2, l, m1, m2, 0)
                assert a == cgc.cgc_matrix(l1, l2, l, m1, m2, 0)


@pytest.mark.parametrize("l1, l2, lam", [(1, 1, 0), (2, 2, 0), (0, 2, 1), (1, 2, 1), (3, 3, 0)])
def test_orthogonality(l1, l2, lam):
    assert cgc.verify_orthogonality(l1, l2, lam)


@pytest.mark.parametrize("args", [(1, 1, 2, 0), (1, 1, 0, 0), (2, 2, 3, 0), (1, 2, 2, 1)])
def test_coupled_transform(args):
    assert cgc.verify_coupled_transform(*args)


def test_triangle_violation_raises():
    with pytest.raises(ValueError):
        cgc.verify_coupled_transform(1, 1, 3, 0)


@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 6), st.integers(-3, 3), st.integers(-3, 3),
       st.integers(0, 1))
def test_weight_conservation_and_parity(l1, l2, l, m1, m2, lam):
    c = cgc.cgc_closed(l1, l2, l, m1, m2, lam)
    if not cgc.in_domain(l1, l2, l, m1, m2):
        assert c.is_zero()
    else:
        assert c.parity() == 0


def test_golden_tables_match_except_known_cell():
    assert cgc.golden_mismatches(1, 1, 0) == [] and cgc.golden_mismatches(1, 1, 1) == []
    # the printed (l=4, m=0, m1=0) cell of the 2x2 table is off by a factor [2]
    for lam in (0, 1):
        assert cgc.golden_mismatches(2, 2, lam) == [(4, 0, 0)]
        printed, of = cgc.golden_entry(2, 2, 4, 0, 0, lam)
        assert cgc.cgc_closed(2, 2, 4, 0, 0, lam) == printed * of / parse_scalar("[2]")


def test_emit_table_formats():
    assert cgc.emit_table(0, 0, 0, "csv").splitlines()[1] == "0,0,0,0,1"
    latex = cgc.emit_table(1, 1, 0, "latex")
    assert latex.count("\\begin{tabular}") == 3
    assert cgc.emit_table(2, 2, 1, "latex").count("\\begin{tabular}") == 5
    with pytest.raises(ValueError):
        cgc.emit_table(1, 1, 0, "xml")

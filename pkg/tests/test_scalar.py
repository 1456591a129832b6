from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ospq.expr import ParseError, format_scalar, parse_scalar, scalar_from_struct, scalar_to_struct
from ospq.scalar import (
    PROBE_QS, Scalar, classical_limit, eval_numeric, kulish, kulish_binomial, kulish_factorial,
    q_pow, s_pow, sqrt_scalar, varrho, verify_kulish_summation,
)


def _num_kulish(n: int, q) -> mpmath.mpf:
    # independent evaluation of the defining formula
    q = Fraction(q)
    s = mpmath.sqrt(mpmath.mpf(q.numerator) / q.denominator)
    return (s ** -n - (-1) ** n * s ** n) / (s ** -1 + s)


def test_kulish_small_values():
    assert kulish(1) == Scalar.const(1)
    assert kulish(0).is_zero()
    assert kulish(-3) == kulish(3)


def test_kulish_two_at_quarter():
    assert eval_numeric(kulish(2), Fraction(1, 4)) == mpmath.mpf(3) / 2


@pytest.mark.parametrize("n", range(1, 13))
def test_negative_kulish_reflection(n):
    assert kulish(-n) == kulish(n) * (-1) ** (n + 1)


@pytest.mark.parametrize("n", range(1, 13))
def test_kulish_positive_and_matches_formula(n):
    for q in PROBE_QS:
        v = eval_numeric(kulish(n), q)
        assert v > 0
        with mpmath.workdps(60):
            assert abs(v - _num_kulish(n, q)) < mpmath.mpf("1e-45")


def test_factorials():
    assert kulish_factorial(0) == Scalar.const(1)
    assert kulish_factorial(1) == Scalar.const(1)
    f3 = kulish_factorial(3)
    assert f3 == kulish(3) * kulish(2)
    with mpmath.workdps(60):
        want = _num_kulish(3, Fraction(1, 4)) * _num_kulish(2, Fraction(1, 4))
    assert abs(eval_numeric(f3, Fraction(1, 4)) - want) < mpmath.mpf("1e-45")
    with pytest.raises(ValueError):
        kulish_factorial(-1)


def test_varrho():
    v = eval_numeric(varrho(), Fraction(1, 4))
    assert abs(v - mpmath.mpf("0.009766")) < mpmath.mpf("1e-6")
    assert varrho() * (q_pow(-4) - q_pow(4)) == s_pow(-1) + s_pow(1)
    for q in PROBE_QS:
        assert eval_numeric(varrho(), q) > 0


def test_binomials():
    assert kulish_binomial(5, 0) == Scalar.const(1)
    assert kulish_binomial(2, 1) == kulish(2)
    assert kulish_binomial(-1, 2) == Scalar.const(-1)
    assert kulish_binomial(1, 3).is_zero()


def test_sqrt_fold_rules():
    x = kulish(4) * varrho()
    r = sqrt_scalar(x)
    assert r * r == x
    assert sqrt_scalar(kulish(2)) * sqrt_scalar(kulish(2)) == kulish(2)
    assert sqrt_scalar(kulish_factorial(3)) * sqrt_scalar(kulish(3)) == kulish(3) * sqrt_scalar(kulish(2))


def test_sqrt_rejects_bad_input():
    with pytest.raises(ValueError):
        sqrt_scalar(kulish(2) + kulish(3) * sqrt_scalar(kulish(2)))
    with pytest.raises(ValueError):
        sqrt_scalar(-kulish(2))


def test_sqrt_two_numeric():
    v = eval_numeric(sqrt_scalar(kulish(2)), Fraction(1, 4))
    with mpmath.workdps(60):
        assert abs(v - mpmath.sqrt(mpmath.mpf(3) / 2)) < mpmath.mpf("1e-49")


def test_eval_errors():
    xi = Scalar.param("xi_odd", odd=True)
    with pytest.raises(KeyError):
        eval_numeric(Scalar.param("r"), Fraction(1, 2))
    with pytest.raises(ValueError):
        eval_numeric(xi, Fraction(1, 2), {"xi_odd": 1})
    assert eval_numeric(xi, Fraction(1, 2), {"xi_odd": 0}) == 0


def test_odd_parameters_anticommute():
    a = Scalar.param("a_odd", odd=True)
    b = Scalar.param("b_odd", odd=True)
    assert a * b == -(b * a)
    assert (a * a).is_zero()
    assert (a * b).parity() == 0 and a.parity() == 1


def test_squaring_odd_parameter_is_a_parse_error():
    with pytest.raises(ParseError):
        parse_scalar("xi_odd^2")


@pytest.mark.parametrize("n, r, k", [(-1, -1, 0), (-1, -1, 1), (-3, -2, 4)])
def test_kulish_summation_examples(n, r, k):
    assert verify_kulish_summation(n, r, k)


def test_classical_limit():
    assert classical_limit(kulish(3)) == Scalar.const(1)
    assert classical_limit(kulish(2)) == Scalar.const(0)
    assert classical_limit(varrho()) is None


# ---------------------------------------------------------------------------
# randomized ring laws

ATOMS = ["1", "2", "(-1/3)", "s", "q", "[2]", "[3]", "[4]!", "rho", "sqrt([2])", "sqrt([3]*rho)",
         "r", "g1^(1/2)", "xi_odd", "eta_odd", "omega"]


@st.composite
def scalars(draw):
    n = draw(st.integers(1, 3))
    parts = []
    for _ in range(n):
        k = draw(st.integers(1, 2))
        parts.append("*".join(draw(st.sampled_from(ATOMS)) for _ in range(k)))
    return parse_scalar(" + ".join(parts))


@settings(max_examples=200)
@given(scalars(), scalars(), scalars())
def test_ring_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c
    assert a + b == b + a
    assert a - a == Scalar()


@given(scalars())
def test_print_parse_round_trip(a):
    assert parse_scalar(format_scalar(a)) == a
    assert scalar_from_struct(scalar_to_struct(a)) == a


@given(scalars(), scalars())
def test_eval_is_a_homomorphism(a, b):
    bind = {"r": Fraction(2, 3), "g1": Fraction(5, 7), "xi_odd": 0, "eta_odd": 0}
    q = Fraction(1, 2)
    with mpmath.workdps(60):
        ea, eb = eval_numeric(a, q, bind), eval_numeric(b, q, bind)
        assert abs(eval_numeric(a * b, q, bind) - ea * eb) < mpmath.mpf("1e-40")
        assert abs(eval_numeric(a + b, q, bind) - (ea + eb)) < mpmath.mpf("1e-40")


@given(scalars())
def test_inverse_of_laurent_part(a):
    term = Scalar._raw({k: v for k, v in list(a.terms.items())[:1]})
    if term.is_zero() or any(p[1] for _, p in term.terms):
        return
    assert term * term.inverse() == Scalar.const(1)

from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

import oracles
from effint.errors import RingMismatchError
from effint.ring import truncated_polynomial_ring
from effint.series import LaurentSeries, default_order, double_pole_closed_form, expand_pole, mul, verify_double_pole

XY = truncated_polynomial_ring(["x", "y"], [2, 2])
BIG = truncated_polynomial_ring(["a", "b"], [12, 12])


def test_pole_at_zero():
    s = expand_pole("+", 0, 5)
    assert s.coefficient(-1) == 1
    assert all(s.coefficient(-k) == 0 for k in (0, 2, 3, 4, 5))


def test_minus_pole_alternates():
    ring = truncated_polynomial_ring(["psi"], [5])
    psi = ring.gen("psi")
    s = expand_pole("-", psi, 3)
    assert s.tail == (ring.zero, -ring.one, psi, -(psi**2))


def test_nilpotent_pole_terminates():
    ring = truncated_polynomial_ring(["e"], [1])
    s = expand_pole("+", ring.gen("e"), 6)
    assert [bool(c) for c in s.tail] == [False, True, True, False, False, False, False]


def test_equal_roots():
    a = Fraction(3, 2)
    s = expand_pole("+", a, 10) * expand_pole("+", a, 10)
    for k in range(1, 9):
        assert s.coefficient(-k - 1) == k * a ** (k - 1)


def test_identity_series():
    x = expand_pole("+", XY.gen("x"), 6)
    one = LaurentSeries.constant(XY.one, 6)
    assert mul(x, one).equals(x)


def test_verify_double_pole_examples():
    assert verify_double_pole(0, 0, 8)
    assert verify_double_pole(XY.parse("x + 2*y"), XY.parse("3*x*y - y"), 12)
    assert verify_double_pole(Fraction(2, 3), Fraction(-5, 7), 10)


def test_formal_symbols_match_sympy_oracle():
    # a truncated ring whose bounds exceed the order behaves like free symbols
    order = 8
    s = expand_pole("+", BIG.gen("a"), order) * expand_pole("+", BIG.gen("b"), order)
    ref = oracles.double_pole_coefficients(*sp.symbols("a b"), order)
    for j in range(order + 1):
        coeff = s.coefficient(-j)
        expr = sum(c * sp.Symbol("a") ** m[0] * sp.Symbol("b") ** m[1] for m, c in coeff.terms.items())
        assert sp.expand(expr - ref[j]) == 0
    assert verify_double_pole(BIG.gen("a"), BIG.gen("b"), order)


def test_ring_mismatch():
    with pytest.raises(RingMismatchError):
        expand_pole("+", XY.gen("x"), 3) * expand_pole("+", 1, 3)


def test_polynomial_part_and_shift():
    s = expand_pole("-", 0, 6).shift(1).scale(Fraction(5))
    assert s.poly == () and s.coefficient(0) == -5 and s.order == 5
    assert s * s == LaurentSeries.constant(Fraction(25), 5)


def test_poly_times_tail_precision():
    t = LaurentSeries((Fraction(1),), (Fraction(0),) * 5, Fraction(0))  # the series "t"
    p = expand_pole("+", Fraction(2), 5)
    prod = t * p
    assert prod.order == 4
    assert prod.coefficient(0) == 1 and prod.coefficient(-1) == 2


def test_default_order_env(monkeypatch):
    monkeypatch.setenv("EFFINT_TRUNCATION", "9")
    assert default_order() == 9
    assert expand_pole("+", 1).order == 9


elems = st.builds(
    lambda p, q, r: XY.parse("0") + XY.gen("x") * p + XY.gen("y") * q + XY.gen("x") * XY.gen("y") * r,
    st.integers(-4, 4),
    st.integers(-4, 4),
    st.integers(-4, 4),
)
signs = st.sampled_from("+-")


@given(elems, elems, elems, signs, signs, signs)
def test_series_product_associative_commutative(a, b, c, s1, s2, s3):
    x, y, w = expand_pole(s1, a, 8), expand_pole(s2, b, 8), expand_pole(s3, c, 8)
    assert (x * y).equals(y * x)
    assert ((x * y) * w).equals(x * (y * w))


@given(elems)
def test_minus_pole_reflection(a):
    # 1/(-t - a) = -1/(t + a) = -(1/(t - (-a)))
    assert expand_pole("-", a, 10).equals(-expand_pole("+", -a, 10))


@given(elems, elems)
def test_double_pole_identity(a, b):
    assert verify_double_pole(a, b, 12)


@given(st.fractions(max_denominator=9, min_value=-3, max_value=3), st.fractions(max_denominator=9, min_value=-3, max_value=3))
def test_double_pole_closed_form_rational(a, b):
    lhs = expand_pole("+", a, 9) * expand_pole("+", b, 9)
    assert lhs.equals(double_pole_closed_form(a, b, 9))

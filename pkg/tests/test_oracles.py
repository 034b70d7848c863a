"""The sympy oracle reproduces every frozen reference value."""

from fractions import Fraction

import pytest
import sympy as sp

import frozen
import oracles
from oracles import lam, z


def as_sympy(table, h):
    env = {"h": h, "lam": lam, "zeta": z}
    return sp.expand(
        sum(c * sp.sympify(m.replace("^", "**").replace("lambda", "lam"), locals=env) for m, c in table.items())
    )


def test_quintic_cycles():
    red, vir, psi, hs, reduce_ = oracles.genus_one_cycles([4], [[5]])
    assert red == as_sympy(frozen.QUINTIC_RED, hs[0])
    assert vir == as_sympy(frozen.QUINTIC_VIR, hs[0])
    assert reduce_(-psi * red) == vir
    assert oracles.integrate(reduce_(psi * red), [4], 1, hs) == frozen.QUINTIC_K1
    assert oracles.integrate(reduce_(hs[0] * red), [4], 1, hs) == frozen.QUINTIC_H


def test_x24_cycles():
    red, vir, psi, hs, reduce_ = oracles.genus_one_cycles([5], [[2], [4]])
    assert red == as_sympy(frozen.X24_RED, hs[0])
    assert vir == as_sympy(frozen.X24_VIR, hs[0])
    assert sp.expand(reduce_(-psi * red) - vir) == 0


def test_genus_one_two_markings():
    # string equation by hand: [k=2, n=2] = [k=1, n=1] + [psi_DF, k=0, n=1], psi_DF -> -zeta
    red, _, psi, hs, reduce_ = oracles.genus_one_cycles([4], [[5]])
    k1 = oracles.integrate(reduce_(psi * red), [4], 1, hs)
    df = oracles.integrate(reduce_(-z * red), [4], 1, hs)
    assert k1 + df == frozen.QUINTIC_N2_K2
    assert oracles.integrate(reduce_(hs[0] * red), [4], 1, hs) == frozen.QUINTIC_N2_K1_H
    assert oracles.integrate(reduce_(red), [4], 1, hs) == frozen.QUINTIC_N2_K1


@pytest.mark.parametrize("args,expected", sorted(frozen.BEZOUT.items()))
def test_bezout(args, expected):
    assert oracles.bezout_min_b(*args) == expected


def test_double_pole_symbolic():
    a, b = sp.symbols("a b")
    coeffs = oracles.double_pole_coefficients(a, b, 8)
    for k in range(1, 8):
        assert coeffs[k + 1] == sp.expand(sum(a**kp * b ** (k - 1 - kp) for kp in range(k)))
    assert coeffs[0] == 0 and coeffs[1] == 0

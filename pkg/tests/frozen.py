"""Reference values produced by ``oracles.py`` and frozen here.

``test_oracles.py`` re-derives every entry so drift in the oracle is caught.
"""

from fractions import Fraction

QUINTIC_RED = {"h^4": 205, "lambda*h^3": 40}
QUINTIC_VIR = {"lambda*h^4": -5}
QUINTIC_K1 = Fraction(5, 24)
QUINTIC_H = Fraction(5, 3)

# P(O(-2) + O(-4)) over P^5
X24_RED = {"h^5*zeta": 182, "lambda*h^4*zeta": 41, "lambda*h^5": -76}
X24_VIR = {"lambda*h^5*zeta": -12}

# genus one, two unit markings, quintic
QUINTIC_N2_K2 = Fraction(-65, 8)
QUINTIC_N2_K1_H = Fraction(5, 3)
QUINTIC_N2_K1 = Fraction(0)

# (r, d, ell) -> (r_hat, d_hat, a, b)
BEZOUT = {
    (1, 1, 1): (1, 1, 1, 0),
    (1, 1, 5): (5, 1, 0, 1),
    (5, 5, 1): (5, 5, 1, 0),
    (3, 2, 4): (6, 1, 0, 1),
    (2, 3, 6): (4, 1, 0, 1),
    (1, 2, 5): (5, 2, 1, -2),
}

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import frozen
from effint.errors import NotAUnitError, SpecificationError
from effint.ring import (
    RELATION,
    BundleDesc,
    Generator,
    RingSpec,
    chern_kclass,
    chern_twisted,
    integrate,
    invert_unit,
    make_ring,
    segre_pushforward,
    truncated_polynomial_ring,
)
from effint.genus1 import build_genus1
from effint.target import PRESETS


@pytest.fixture(scope="module")
def h4():
    return truncated_polynomial_ring(["h"], [4])


@pytest.fixture(scope="module")
def lh4():
    return make_ring(RingSpec((Generator("lambda", 1, 1), Generator("h", 1, 4)), hodge="lambda"))


def quintic_bundle_ring():
    gens = (Generator("lambda", 1, 1), Generator("h", 1, 4), Generator("zeta", 1, RELATION))
    return make_ring(RingSpec(gens, bundle=({"h": -5},), hodge="lambda"))


def two_summand_ring():
    gens = (Generator("a", 1, 3), Generator("b", 1, 3), Generator("zeta", 1, RELATION))
    return make_ring(RingSpec(gens, bundle=({"a": 1}, {"b": 1})))


def test_truncated_square(h4):
    h = h4.gen("h")
    assert (h4.one + h) * (h4.one + h) == h4.parse("1 + 2*h + h^2")
    assert h**5 == h4.zero


def test_lambda_squared(lh4):
    assert lh4.gen("lambda") * lh4.gen("lambda") == lh4.zero


def test_rank_one_relation():
    ring = quintic_bundle_ring()
    assert ring.gen("zeta") == ring.gen("h") * 5


def test_relation_requires_degree_one_classes():
    gens = (Generator("p", 2, 2), Generator("zeta", 1, RELATION))
    with pytest.raises(SpecificationError):
        make_ring(RingSpec(gens, bundle=({"p": 1},)))


def test_invert_geometric(h4):
    x = h4.parse("1 + 5*h")
    assert invert_unit(x) == h4.parse("1 - 5*h + 25*h^2 - 125*h^3 + 625*h^4")
    assert invert_unit(h4.one) == h4.one


def test_invert_with_hodge(lh4):
    x = lh4.parse("1 + 5*h - lambda")
    y = invert_unit(x)
    assert x * y == lh4.one
    # sum_k (lambda - 5h)^k, lambda^2 = 0
    assert y == lh4.parse("1 - 5*h + lambda + 25*h^2 - 10*h*lambda - 125*h^3 + 75*h^2*lambda + 625*h^4 - 500*h^3*lambda + 3125*h^4*lambda")


def test_not_a_unit(h4):
    with pytest.raises(NotAUnitError):
        invert_unit(h4.parse("2 + h"))


def test_chern_twisted_line(lh4):
    lam = lh4.gen("lambda")
    v = BundleDesc((lh4.gen("h") * 5,))
    assert chern_twisted(v, -lam) == lh4.parse("1 + 5*h - lambda")


def test_chern_twisted_tangent_plus_trivial(lh4):
    h, lam = lh4.gen("h"), lh4.gen("lambda")
    v = BundleDesc((h,) * 5 + (lh4.zero,))
    factor = lh4.one + h - lam
    assert chern_twisted(v, -lam) == factor**5 * (lh4.one - lam)
    assert chern_twisted(v, -lam).homogeneous_part(1) == lh4.parse("5*h - 6*lambda")


def test_chern_twist_zero(h4):
    h = h4.gen("h")
    v = BundleDesc((h, h * 2))
    assert chern_twisted(v, h4.zero) == (h4.one + h) * (h4.one + h * 2)


def test_chern_kclass_quintic(lh4):
    h, lam = lh4.gen("h"), lh4.gen("lambda")
    num = BundleDesc((h,) * 5)
    den = BundleDesc((h * 5,))
    got = chern_kclass(num, den, -lam).homogeneous_part(4)
    assert got == lh4.parse("205*h^4 + 40*h^3*lambda")


def test_chern_kclass_trivial_cases(lh4):
    h, lam = lh4.gen("h"), lh4.gen("lambda")
    num = BundleDesc((h, h * 3))
    assert chern_kclass(num, BundleDesc(()), -lam) == chern_twisted(num, -lam)
    assert chern_kclass(num, num, -lam) == lh4.one


def test_nonhomogeneous_twist_rejected(h4):
    with pytest.raises(SpecificationError):
        chern_twisted(BundleDesc((h4.gen("h"),)), h4.parse("h + h^2"))


def test_segre_pushforward_basics():
    ring = two_summand_ring()
    zeta = ring.gen("zeta")
    assert segre_pushforward(zeta) == ring.one
    assert segre_pushforward(ring.one) == ring.zero
    # rank 2: zeta^2 pushes to s_1 = -(a + b)
    assert segre_pushforward(zeta**2) == ring.parse("-a - b")


def test_integrate(lh4):
    assert integrate(lh4.parse("lambda*h^4")) == Fraction(1, 24)
    assert integrate(lh4.parse("h^4")) == 0
    assert integrate(lh4.zero) == 0


def test_integrate_normalization_configurable():
    ring = make_ring(RingSpec((Generator("lambda", 1, 1), Generator("h", 1, 4)), hodge="lambda", normalization=Fraction(1, 2)))
    assert integrate(ring.parse("3*lambda*h^4")) == Fraction(3, 2)


def test_model_red_cycle_matches_frozen():
    model = build_genus1(PRESETS["quintic"]())
    ring = model.ring
    expected = ring.zero
    for mono, c in frozen.QUINTIC_RED.items():
        expected = expected + ring.parse(mono) * c
    assert model.red_cycle == expected


# -- properties -----------------------------------------------------------

RING = truncated_polynomial_ring(["x", "y"], [3, 2])
MONOS = [(i, j) for i in range(4) for j in range(3)]
coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@st.composite
def elements(draw, ring=RING):
    terms = draw(st.dictionaries(st.sampled_from(MONOS), coeffs, max_size=6))
    return ring.element(terms)


@st.composite
def units(draw):
    x = draw(elements())
    return x - RING.scalar(x.constant_term) + RING.one


@given(elements(), elements(), elements())
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a + RING.zero == a and a * RING.one == a


@given(units())
def test_inverse_property(x):
    assert invert_unit(x) * x == RING.one


LINEAR = st.builds(lambda p, q: RING.linear({"x": p, "y": q}), st.integers(-3, 3), st.integers(-3, 3))


@given(st.lists(LINEAR, max_size=3), st.lists(LINEAR, max_size=3), LINEAR)
def test_chern_multiplicative(vs, ws, t):
    v, w = BundleDesc(tuple(vs)), BundleDesc(tuple(ws))
    assert chern_twisted(v + w, t) == chern_twisted(v, t) * chern_twisted(w, t)


@given(st.lists(LINEAR, max_size=4))
def test_chern_untwisted(vs):
    expected = RING.one
    for v in vs:
        expected = expected * (RING.one + v)
    assert chern_twisted(BundleDesc(tuple(vs)), RING.zero) == expected


def _bundle_ring(forms):
    gens = (Generator("a", 1, 2), Generator("b", 1, 2), Generator("zeta", 1, RELATION))
    return make_ring(RingSpec(gens, bundle=tuple(forms)))


forms = st.lists(
    st.builds(lambda p, q: {"a": p, "b": q}, st.integers(-3, 3), st.integers(-3, 3)), min_size=1, max_size=3
)


@given(forms, st.integers(0, 2), st.integers(0, 2), st.integers(0, 5))
def test_projection_formula(fs, i, j, e):
    ring = _bundle_ring(fs)
    base = ring.gen("a") ** i * ring.gen("b") ** j
    x = ring.gen("zeta") ** e
    assert segre_pushforward(base * x) == base * segre_pushforward(x)


@given(forms)
def test_segre_series_and_relation(fs):
    ring = _bundle_ring(fs)
    rk = len(fs)
    c = ring.bundle_chern
    s = invert_unit(c)
    for a in range(ring.top_degree + 1):
        assert segre_pushforward(ring.gen("zeta") ** (rk - 1 + a)) == s.homogeneous_part(a)
    zeta = ring.gen("zeta")
    relation = ring.zero
    for j in range(rk + 1):
        relation = relation + c.homogeneous_part(j) * zeta ** (rk - j)
    assert relation == ring.zero

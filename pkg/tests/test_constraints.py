import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from effint.constraints import (
    Vanishing,
    analyze,
    balancing,
    barton,
    bound0,
    ci_threshold,
    ci_value,
    ci_vdim,
    fano_exceptions,
    fano_exceptions_bruteforce,
    grassmann_threshold,
    hypersurface_exceptions,
    hypersurface_table,
    hypersurface_threshold,
    product_threshold,
    reduced_vdim,
    reduced_vdim_infinity,
    summarize_table,
    vanishing_check,
)
from effint.errors import InvalidDataError, OutOfRegimeError
from effint.target import PRESETS, AmbientSpace, DiscreteData, SplitBundle, TargetSpec, complete_intersection

QUINTIC = PRESETS["quintic"]()


def test_balancing_all_minus_one():
    # t = 2g - 2 forces every contact to be -1
    ok, defect = balancing(DiscreteData(2, (0,), (-1, -1)), QUINTIC)
    assert not ok
    ok, _ = balancing(DiscreteData(1, (0,), (-1,)), QUINTIC)
    assert ok


def test_balancing_quintic_basic():
    assert balancing(DiscreteData(2, (0,), (-2, -2)), QUINTIC) == (True, 0)
    assert balancing(DiscreteData(4, (1,), (-2,)), QUINTIC) == (True, 0)


def test_quintic_dimensions():
    data = DiscreteData(2, (0,), (-2, -2))
    assert bound0(QUINTIC, 2, (0,)) == 0
    assert ci_vdim(data, QUINTIC) == 2
    assert reduced_vdim(data, QUINTIC) == 0 == reduced_vdim_infinity(data, QUINTIC)


def test_genus_one_dimension():
    data = DiscreteData(1, (0,), (-1,))
    assert reduced_vdim(data, QUINTIC) == 1


@st.composite
def random_setup(draw):
    dims = draw(st.lists(st.integers(1, 6), min_size=1, max_size=3))
    rk = draw(st.integers(1, 3))
    rows = tuple(tuple(draw(st.integers(1, 6)) for _ in dims) for _ in range(rk))
    target = complete_intersection(dims, rows)
    g = draw(st.integers(0, 8))
    beta = tuple(draw(st.integers(0, 5)) for _ in dims)
    contacts = tuple(draw(st.lists(st.integers(-6, -1), max_size=5)))
    t = None if rk == 1 else draw(st.integers(0, 40))
    return target, DiscreteData(g, beta, contacts, log_degree=t)


@given(random_setup())
def test_dimension_routes_agree_under_balancing(setup):
    target, data = setup
    ok, defect = balancing(data, target)
    diff = reduced_vdim(data, target) - reduced_vdim_infinity(data, target)
    assert diff == target.rank * defect
    assert (diff == 0) == ok


def _with_degrees(data):
    return st.lists(st.sampled_from([0, 2, 4, 6]), min_size=data.n, max_size=data.n)


@given(random_setup(), st.data())
def test_vanishing_monotone_in_insertion_degree(setup, draw):
    target, data = setup
    degs = draw.draw(_with_degrees(data))
    bumped = [d + 2 for d in degs]
    if vanishing_check(data, target, degs).vanishes:
        assert vanishing_check(data, target, bumped).vanishes


@given(random_setup())
def test_unbalanced_is_empty(setup):
    target, data = setup
    if not balancing(data, target)[0]:
        assert vanishing_check(data, target) is Vanishing.EMPTY


def test_general_type_vanishing():
    # degree 7 hypersurface in P^5: K (x) det positive, ci_vdim negative for large genus
    t = complete_intersection([5], [7])
    assert vanishing_check(DiscreteData(3, (0,), (-2,) * 4), t) is Vanishing.ZERO_CYCLE


@given(st.integers(0, 6), st.lists(st.integers(-5, -1), max_size=6))
def test_genus_zero_nef_empty(b, contacts):
    data = DiscreteData(0, (b,), tuple(contacts))
    assert vanishing_check(data, QUINTIC) is Vanishing.EMPTY


def test_strict_bound_without_h1_vanishing():
    amb = AmbientSpace("S", 5, (-2,), ("H",), h1_vanishes=False)
    t = TargetSpec(amb, SplitBundle(((3,),)))
    # bound0 = (3 - 5 + 1)(g - 1) + <K + det, beta> ; g=3, beta=0 gives -2
    data = DiscreteData(3, (0,), (-2, -2, -2, -2, -1, -1))
    assert bound0(t, 3, (0,)) < 0 <= ci_vdim(data, t)
    assert vanishing_check(data, t, [0, 0, 0, 0, 2, 2]) is Vanishing.ZERO_CYCLE
    assert vanishing_check(data, t, [0, 0, 0, 0, 0, 2]) is Vanishing.UNKNOWN


def test_analyze_report():
    rep = analyze(DiscreteData(2, (0,), (-2, -2)), QUINTIC)
    assert rep.feasible and rep.red_vdim == 0 and rep.vanish is Vanishing.UNKNOWN
    bad = analyze(DiscreteData(2, (1,), (-2,)), QUINTIC)
    assert not bad.feasible and bad.balancing_defect == -4
    assert bad.as_dict()["vanish"] == "empty"


def test_cubic_in_p9_vanishes():
    assert hypersurface_threshold(3, 9)
    assert not hypersurface_threshold(3, 8)


def test_hypersurface_regime():
    with pytest.raises(OutOfRegimeError):
        hypersurface_threshold(3, 4)


def test_hypersurface_table_rows():
    rows = summarize_table(hypersurface_table(100, 100), 100)
    expected = [(3, 9, 100), (4, 6, 100)] + [(d, d, 100) for d in range(5, 101)]
    assert rows == expected


def test_hypersurface_exceptions():
    got = [(e.degrees[0], e.n, e.in_regime) for e in hypersurface_exceptions(60)]
    expected = [(3, n, n >= 5) for n in range(3, 9)] + [(4, 4, False), (4, 5, True)]
    assert got == expected


def test_fano_exceptions():
    assert fano_exceptions(60) == [(2, 2), (2, 3), (2, 4), (2, 2, 2), (2, 2, 3), (2, 2, 2, 2)]


@pytest.mark.parametrize("n_max", [12, 18, 22])
def test_fano_exceptions_match_bruteforce(n_max):
    assert fano_exceptions(n_max) == fano_exceptions_bruteforce(n_max)


def test_ci_threshold_regime():
    with pytest.raises(OutOfRegimeError):
        ci_threshold((3, 3), 5)
    with pytest.raises(OutOfRegimeError):
        ci_threshold((1, 3), 9)


def test_products():
    assert product_threshold([1, 1, 1], [5, 5, 5])
    assert not product_threshold([1, 1], [3, 3])
    with pytest.raises(OutOfRegimeError):
        product_threshold([2, 2], [1, 2])


def test_grassmann_regime():
    with pytest.raises(OutOfRegimeError):
        grassmann_threshold(3, 2, 4)
    assert grassmann_threshold(10, 2, 6) and not grassmann_threshold(1, 2, 6)


def test_barton_on_projective_space():
    b = barton(SplitBundle(((3,), (4,))), [9])
    assert b.m == 3 and b.m_prime == 3
    assert b.value == 3 - 9 + 2 + 2


@given(st.lists(st.integers(2, 8), min_size=1, max_size=4), st.integers(5, 40))
def test_barton_reproduces_ci_threshold(ds, n):
    ds = sorted(ds)
    if sum(ds) > n or n - len(ds) < 4:
        return
    b = barton(SplitBundle(tuple((d,) for d in ds)), [n])
    assert b.value == ci_value(ds, n)
    assert b.vanishes == ci_threshold(ds, n)


def test_barton_rejects_non_ample():
    with pytest.raises(InvalidDataError):
        barton(SplitBundle(((0,),)), [5])

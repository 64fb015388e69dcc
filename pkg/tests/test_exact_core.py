from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from superchar.exact import (HALF, I, ONE, ZERO, GaussRat, NotDivisible, PolySeries, WindowSeries,
                             ZPoly, multiply, ps_equal, rat, rat_str, root_of_unity_quarter,
                             scalar_inverse, series_from_json)

QMAX = Fraction(3)

small = st.integers(min_value=-3, max_value=3)
gauss = st.builds(GaussRat, small, small)
exps_q = st.sampled_from([Fraction(k, 2) for k in range(0, 6)])
exps_z = st.sampled_from([Fraction(k, 2) for k in range(-4, 5)])
terms = st.lists(st.tuples(exps_q, exps_z, gauss), max_size=6)
series = terms.map(lambda t: PolySeries(t, QMAX))


def same(a, b):
    return ps_equal(a, b).passed


# -- Gaussian rationals ----------------------------------------------------------------


def test_gauss_units_and_inverse():
    assert I * I == -ONE
    assert GaussRat(3, 4).inverse() * GaussRat(3, 4) == ONE
    assert GaussRat(1, -2).conjugate() == GaussRat(1, 2)
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_gauss_rejects_floats():
    with pytest.raises(TypeError):
        GaussRat.coerce(1j)


@pytest.mark.parametrize("x, want", [(0, ONE), (Fraction(1, 4), I), (HALF, -ONE), (Fraction(-1, 4), -I)])
def test_root_of_unity_quarter(x, want):
    assert root_of_unity_quarter(x) == want


def test_root_of_unity_outside_gaussian():
    with pytest.raises(ValueError):
        root_of_unity_quarter(Fraction(1, 8))


def test_rationals_cross_as_strings():
    assert rat_str(Fraction(-1, 8)) == "-1/8"
    assert rat_str(Fraction(4, 2)) == "2"
    assert rat("3/6") == HALF


@given(gauss, gauss, gauss)
def test_gauss_field_laws(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    if not b.is_zero():
        assert (a * b) * b.inverse() == a


# -- series ring -------------------------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(series, series, series)
def test_series_ring_laws(a, b, c):
    assert same(a + b, b + a)
    assert same(multiply(a, b), multiply(b, a))
    assert same(multiply(multiply(a, b), c), multiply(a, multiply(b, c)))
    assert same(multiply(a, b + c), multiply(a, b) + multiply(a, c))
    assert same(a - a, PolySeries.zero(QMAX))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.sampled_from([1, 2, 3]), small), max_size=4), st.integers(1, 5))
def test_scalar_inverse_roundtrip(tail, c0):
    s = PolySeries([(0, 0, c0)] + [(q, 0, c) for q, c in tail], 6)
    inv = scalar_inverse(s)
    assert same(multiply(s, inv), PolySeries.one(6))


def test_scalar_inverse_of_shifted_series_loses_twice_the_shift():
    s = PolySeries([(HALF, 0, 1), (Fraction(3, 2), 0, -1)], 5)
    inv = scalar_inverse(s)
    assert inv.qmax == 4
    assert inv.coeff(Fraction(-1, 2)) == ONE


def test_product_order_is_respected():
    # min(N_a + min_b, N_b + min_a)
    a = PolySeries([(Fraction(-1, 8), 0, 1)], 4)
    b = PolySeries([(0, 0, 1)], 2)
    assert multiply(a, b).qmax == Fraction(15, 8)
    with pytest.raises(ValueError):
        multiply(a, b, 2)


def test_shift_moves_truncation():
    s = PolySeries.one(2).shift(Fraction(1, 8), 1)
    assert s.qmax == Fraction(17, 8)
    assert s.leading() == (Fraction(1, 8), Fraction(1), ONE)


def test_ps_equal_reports_first_difference():
    a = PolySeries([(0, 0, 1), (1, 1, 2)], 2)
    b = PolySeries([(0, 0, 1), (1, 1, 3)], 2)
    rep = ps_equal(a, b)
    assert not rep.passed
    assert rep.counterexample == {"q": "1", "zeta": "1", "lhs": "2", "rhs": "3"}
    assert ps_equal(a, b, order=Fraction(1, 2)).passed


def test_ps_equal_refuses_orders_beyond_knowledge():
    a = PolySeries.one(2)
    assert not ps_equal(a, a, order=3).passed


# -- windows ------------------------------------------------------------------------------


def test_window_lower_edge_moves_with_upper_support():
    w = WindowSeries([(0, z, 1) for z in range(-10, 1)], 2, t_lo=-10)
    p = PolySeries([(0, 0, 1), (0, 3, 1)], 2)
    out = multiply(w, p)
    assert out.t_lo == -7
    assert out.string(-7).coeff(0) == GaussRat(2)


def test_window_string_outside_window_raises():
    w = WindowSeries([(0, 0, 1)], 2, t_lo=-2, t_hi=2)
    with pytest.raises(ValueError):
        w.string(3)


def test_ps_equal_rejects_untrusted_window():
    w = WindowSeries([(0, 0, 1)], 2, t_lo=-2)
    assert not ps_equal(w, w, window=(-3, 0)).passed


# -- zeta polynomials ---------------------------------------------------------------------


def test_over_geometric_divides_exactly():
    # (1 - zeta^-1)(1 + zeta^-1) / (1 - zeta^-1) = 1 + zeta^-1
    p = ZPoly({Fraction(0): ONE, Fraction(-2): -ONE})
    q = p.over_geometric(ONE)
    assert dict(q.items()) == {Fraction(0): ONE, Fraction(-1): ONE}


def test_over_geometric_not_divisible():
    with pytest.raises(NotDivisible):
        ZPoly({Fraction(0): ONE}).over_geometric(ONE)


# -- serialization -------------------------------------------------------------------------


@settings(max_examples=30, deadline=None)
@given(series)
def test_json_roundtrip(s):
    back = series_from_json(s.to_json())
    assert same(back, s) and back.qmax == s.qmax


def test_window_json_roundtrip():
    w = WindowSeries([(Fraction(-1, 8), -1, I), (0, Fraction(1, 2), 2)], 3, t_lo=-4, t_hi=4, min_q=Fraction(-1, 8))
    back = series_from_json(w.to_json())
    assert isinstance(back, WindowSeries)
    assert back.window == (-4, 4)
    assert same(back, w)

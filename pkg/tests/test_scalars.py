import pytest
import sympy as sp
from hypothesis import given, strategies as st

from jtwist.scalars import (
    NotInvertibleError,
    OrderMismatchError,
    Q,
    XiSeries,
    format_rational,
    parse_rational,
    series_compose_log1p,
    series_invert,
    series_mul,
)

xi = sp.Symbol("xi")


def _sympy_coeffs(expr, K):
    ser = sp.series(expr, xi, 0, K + 1).removeO()
    return [Q(str(sp.Rational(ser.coeff(xi, k)))) for k in range(K + 1)]


def test_mul_example():
    a = XiSeries([1, 2], 3)
    b = XiSeries([1, -2, 4], 3)
    assert series_mul(a, b) == XiSeries([1, 0, 0, 8], 3)


def test_mul_truncates():
    assert (XiSeries.xi(4, 2) * XiSeries.xi(4, 3)).is_zero()


def test_invert_geometric():
    assert series_invert(XiSeries([1, 2], 3)) == XiSeries([1, -2, 4, -8], 3)
    assert series_invert(XiSeries.one(5)) == XiSeries.one(5)


def test_invert_needs_unit():
    with pytest.raises(NotInvertibleError):
        series_invert(XiSeries.xi(3))


def test_order_mismatch():
    with pytest.raises(OrderMismatchError):
        XiSeries.one(2) + XiSeries.one(3)


@pytest.mark.parametrize("c,K", [(2, 3), (2, 1), (0, 4), ("1/3", 5), (-5, 6)])
def test_half_log1p_against_sympy(c, K):
    expected = _sympy_coeffs(sp.log(1 + sp.Rational(str(c)) * xi) / 2, K)
    got = series_compose_log1p(parse_rational(str(c)), K)
    assert list(got) == expected


def test_log1p_frozen():
    assert str(series_compose_log1p(2, 3)) == "xi - xi^2 + 4/3*xi^3"


@pytest.mark.parametrize("text", ["0", "3", "-7/2", "22/7"])
def test_rational_round_trip(text):
    assert format_rational(parse_rational(text)) == text


def test_json_round_trip():
    s = XiSeries(["1/2", 0, -3], 2)
    assert s.to_json() == ["1/2", "0", "-3"]
    assert XiSeries.from_json(s.to_json()) == s


ratios = st.fractions(max_denominator=20).map(lambda f: Q(f.numerator, f.denominator))
series = st.lists(ratios, min_size=5, max_size=5).map(lambda c: XiSeries(c, 4))


@given(series, series, series)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == XiSeries.zero(4)


@given(series)
def test_inverse_property(a):
    if a[0] == 0:
        return
    assert a * series_invert(a) == XiSeries.one(4)


@given(series, series)
def test_truncation_is_a_ring_map(a, b):
    assert (a * b).truncate(2) == a.truncate(2) * b.truncate(2)

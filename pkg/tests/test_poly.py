import pytest
from hypothesis import given, strategies as st

from satake.poly import QPolynomial, QSeries, format_poly

coeffs = st.lists(st.integers(-20, 20), max_size=8)


def test_format_poly():
    assert format_poly([0, 1, 1]) == "q + q^2"
    assert format_poly([]) == "0"
    assert format_poly([1, -2, 0, 3], "t") == "1 - 2t + 3t^3"


def test_polynomial_trims_and_evaluates():
    p = QPolynomial((0, 1, 1, 0, 0))
    assert p.coeffs == (0, 1, 1)
    assert p.degree == 2
    assert p(1) == 2 and p(2) == 6
    assert str(p) == "q + q^2"


def test_series_truncation_rules():
    s = QSeries.inverse_one_minus_q_power(2, 5)
    assert s.coeffs == (1, 2, 3, 4, 5, 6)
    with pytest.raises(IndexError):
        s[6]
    with pytest.raises(ValueError):
        s.truncate(7)
    assert s.shift(2).trunc == 7
    assert (s * QPolynomial((1, -1))).coeffs == (1,) * 6


@given(coeffs, coeffs, coeffs)
def test_polynomial_ring_axioms(a, b, c):
    a, b, c = QPolynomial(tuple(a)), QPolynomial(tuple(b)), QPolynomial(tuple(c))
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert (a - a).is_zero


@given(coeffs, coeffs, st.integers(0, 10))
def test_series_product_matches_polynomial_product(a, b, order):
    pa, pb = QPolynomial(tuple(a)), QPolynomial(tuple(b))
    assert (pa.to_series(order) * pb.to_series(order)).agrees_with((pa * pb).to_series(order))


@given(st.integers(0, 5), st.integers(0, 12))
def test_geometric_inverse(r, order):
    s = QSeries.inverse_one_minus_q_power(r, order)
    for _ in range(r):
        s = s * QPolynomial((1, -1))
    assert s.agrees_with(QSeries.one(order))

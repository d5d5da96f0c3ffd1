from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from paraherm.gaussrat import I, GaussRational
from paraherm.poly import X, Poly, poly_from_strings

from conftest import small_fractions

gauss = st.builds(GaussRational, small_fractions, small_fractions)
real_polys = st.lists(small_fractions, max_size=7).map(Poly)
complex_polys = st.lists(gauss, max_size=5).map(Poly)


def test_gaussian_unit():
    assert I * I == -1
    assert (1 + I).conjugate() == 1 - I
    assert complex(GaussRational(Fraction(1, 2), -3)) == 0.5 - 3j
    assert str(GaussRational(0, 1)) and GaussRational(2, 0).is_real


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        GaussRational(1, 1) / GaussRational(0, 0)


@given(gauss, gauss, gauss)
def test_gaussian_field_laws(u, v, w):
    assert (u + v) * w == u * w + v * w
    assert (u * v) * w == u * (v * w)
    assert (u * v).conjugate() == u.conjugate() * v.conjugate()
    if v:
        assert (u / v) * v == u


@given(gauss)
def test_gaussian_matches_complex(u):
    assert complex(u * u) == pytest.approx(complex(u) ** 2)


def test_poly_canonical_form():
    assert Poly([1, 2, 0, 0]) == Poly([1, 2])
    assert Poly([]).degree == -1 and Poly([0]).is_zero()
    assert (X ** 3).degree == 3
    assert Poly([-6, 0, 4]).to_str() == "4*x^2 - 6"
    assert poly_from_strings(["1/2", "-3"]) == Poly([Fraction(1, 2), -3])


@given(real_polys, real_polys, real_polys)
def test_poly_ring_laws(f, g, h):
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)
    assert f + g == g + f
    assert (f - f).is_zero()


@given(real_polys, real_polys, small_fractions)
def test_poly_evaluation_homomorphism(f, g, x):
    assert (f * g)(x) == f(x) * g(x)
    assert (f + g)(x) == f(x) + g(x)


@given(real_polys, real_polys)
def test_ordinary_leibniz(f, g):
    assert (f * g).derivative() == f.derivative() * g + f * g.derivative()


@given(complex_polys)
def test_parity_split(f):
    assert f.even_part() + f.odd_part() == f
    assert f.even_part().is_even() and f.odd_part().is_odd()
    assert f.reflect() == f.even_part() - f.odd_part()

from fractions import Fraction as F
import math

import pytest
from hypothesis import given, strategies as st

from paraherm.defcalc import (
    GaussPoly, MomentValue, SeriesDivergenceError, deform_param, deformed_antiderivative,
    deformed_binomial_coeffs, deformed_definite_integral, deformed_derivative,
    deformed_exp_partial, deformed_exp_poly, deformed_factorial, deformed_number,
    gaussian_moment, integrate_gauss_poly, series_integral_oracle,
)
from paraherm.poly import X, Poly

from conftest import positive_p, small_fractions

polys = st.lists(small_fractions, max_size=7).map(Poly)
even_polys = st.lists(small_fractions, max_size=4).map(lambda cs: Poly([c for pair in zip(cs, [0] * len(cs)) for c in pair]))


def test_deform_param_validation():
    assert deform_param("5/2") == F(5, 2)
    for bad in (0, -1, "-3/4"):
        with pytest.raises(ValueError):
            deform_param(bad)


@pytest.mark.parametrize("n,p,want", [(4, 3, 4), (5, 3, 7), (7, 1, 7)])
def test_deformed_number_examples(n, p, want):
    assert deformed_number(n, p) == want


@pytest.mark.parametrize("n,p,want", [(0, 5, 1), (3, 2, 16), (4, 1, 24)])
def test_deformed_factorial_examples(n, p, want):
    assert deformed_factorial(n, p) == want


@given(st.integers(0, 30), positive_p)
def test_deformed_number_parity_rule(n, p):
    assert deformed_number(n, p) == (n if n % 2 == 0 else n - 1 + p)
    assert deformed_factorial(n + 1, p) == deformed_factorial(n, p) * deformed_number(n + 1, p)


def test_derivative_examples():
    assert deformed_derivative(X ** 3, 2) == 4 * X ** 2
    for p in (1, 2, F(7, 3)):
        assert deformed_derivative(X ** 2, p) == 2 * X
        w = deformed_derivative(GaussPoly(Poly.const(1), True), p)
        assert w == GaussPoly(-2 * X, True)


@given(even_polys, polys, positive_p)
def test_leibnitz_with_even_factor(e, f, p):
    lhs = deformed_derivative(e * f, p)
    rhs = e.derivative() * f + e * deformed_derivative(f, p)
    assert lhs == rhs


@given(polys, positive_p)
def test_derivative_undoes_antiderivative(f, p):
    assert deformed_derivative(deformed_antiderivative(f, p), p) == f


@given(polys, positive_p)
def test_antiderivative_undoes_derivative_up_to_constant(f, p):
    back = deformed_antiderivative(deformed_derivative(f, p), p)
    assert back == f - Poly.const(f.coeff(0))


@given(polys, positive_p, small_fractions, small_fractions, small_fractions)
def test_definite_integral_additive(f, p, a, b, c):
    I = lambda u, v: deformed_definite_integral(f, u, v, p)
    assert I(a, b) + I(b, c) == I(a, c)


def test_exp_partial_examples():
    assert deformed_exp_partial(0, 10, 3) == 1
    assert deformed_exp_partial(1, 2, 2) == F(7, 4)
    assert deformed_exp_partial(1, 3, 1) == 1 + 1 + F(1, 2) + F(1, 6)


@given(st.integers(1, 15), positive_p)
def test_exp_is_fixed_point_up_to_truncation(K, p):
    E = deformed_exp_poly(K, p)
    assert deformed_derivative(E, p) == deformed_exp_poly(K - 1, p)


def test_exp_at_p1_tends_to_e():
    assert float(deformed_exp_partial(1, 20, 1)) == pytest.approx(math.e, rel=1e-15)


def test_antiderivative_examples():
    assert deformed_antiderivative(X, 3) == X ** 2 / 2
    assert deformed_antiderivative(Poly.const(1), 3) == X / 3
    assert deformed_antiderivative(X ** 2, 1) == X ** 3 / 3


def test_definite_integral_examples():
    for p in (1, 2, 5):
        assert deformed_definite_integral(X, -1, 1, p) == 0
    assert deformed_definite_integral(Poly.const(1), 0, 1, 3) == F(1, 3)
    assert deformed_definite_integral(X ** 2, 0, 1, 1) == F(1, 3)


def test_oracle_examples():
    r = series_integral_oracle(X, -1, 1, 2, depth=4)
    assert abs(r.value) <= 1e-10
    r = series_integral_oracle(Poly.const(1), 0, 1, 3, depth=8)
    assert abs(r.value - 1 / 3) <= 1e-6 and r.tolerance <= 1e-6
    r = series_integral_oracle(X ** 2, 0, 1, 1, depth=1)
    assert abs(r.value - 1 / 3) <= 1e-10


def test_oracle_resums_divergent_series():
    # p - 1 = 4 exceeds n + 1 = 1, so the raw terms grow
    r = series_integral_oracle(Poly.const(1), 0, 1, 5, depth=12)
    assert r.accelerated
    assert abs(r.value - 1 / 5) <= r.tolerance


def test_oracle_reports_nonconvergence():
    with pytest.raises(SeriesDivergenceError):
        series_integral_oracle(Poly.const(1), 0, 1, 3, depth=2, accept=1e-12)


def test_oracle_argument_checks():
    with pytest.raises(ValueError):
        series_integral_oracle(X, 0, 1, 2, depth=0)


@pytest.mark.parametrize("k,p,want", [(2, 3, F(3, 2)), (3, 5, 0), (4, 1, F(3, 4))])
def test_gaussian_moment_examples(k, p, want):
    m = gaussian_moment(k, p)
    assert m.value == want and m.unit == "N0^-2"


@given(st.integers(0, 12), positive_p)
def test_gaussian_moment_recursion(n, p):
    # integrating D(x^(2n+1) e^{-x^2}) over the line gives zero
    assert gaussian_moment(2 * n + 2, p).value * 2 == deformed_number(2 * n + 1, p) * gaussian_moment(2 * n, p).value


def test_integrate_gauss_poly_examples():
    assert integrate_gauss_poly(GaussPoly(4 * X ** 2, True), 2) == MomentValue(4)
    assert integrate_gauss_poly(GaussPoly(X ** 5, True), 3) == MomentValue(0)
    for p in (1, 2, F(9, 2)):
        assert integrate_gauss_poly(GaussPoly(4 * X ** 2, True), p) == MomentValue(2 * F(p))
    with pytest.raises(ValueError):
        integrate_gauss_poly(GaussPoly(X, False), 1)


@given(polys, polys, positive_p)
def test_full_line_integration_by_parts(f, g, p):
    # int (D f) g e^{-x^2} = -int f D(g e^{-x^2}) when f or g is even
    f = f.even_part()
    lhs = integrate_gauss_poly(GaussPoly(deformed_derivative(f, p) * g, True), p)
    rhs = integrate_gauss_poly(GaussPoly(f, False) * deformed_derivative(GaussPoly(g, True), p), p)
    assert lhs.value == -rhs.value


def test_binomial_examples():
    assert deformed_binomial_coeffs(2, 3) == (1, F(2, 3), 1)
    assert deformed_binomial_coeffs(0, 4) == (1,)
    assert deformed_binomial_coeffs(3, 1) == (1, 3, 3, 1)

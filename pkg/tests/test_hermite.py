from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, strategies as st

from paraherm.defcalc import deformed_factorial, deformed_number
from paraherm.hermite import (
    ROUTES, HermiteP, hermite_explicit, hermite_from_generating, hermite_integral_rep,
    hermite_parity_form, hermite_recursive, hermite_rodrigues, ode_residual,
    orthonormality_integral,
)
from paraherm.poly import X, Poly
from paraherm.verify import hermite_table

from conftest import positive_p

H = {1: Poly([0, 2]), 4: Poly([12, 0, -48, 0, 16]), 5: Poly([0, 120, 0, -160, 0, 32]),
     6: Poly([-120, 0, 720, 0, -480, 0, 64])}


def test_explicit_examples():
    for p in (1, 2, F(7, 2)):
        assert hermite_explicit(2, p).poly == 4 * X ** 2 - 2 * F(p)
    assert hermite_explicit(3, 2).poly == 8 * X ** 3 - 16 * X
    assert hermite_explicit(6, 1).poly == H[6]


def test_recursive_examples():
    assert hermite_recursive(2, 3).poly == 4 * X ** 2 - 6
    assert hermite_recursive(0, 9).poly == Poly.const(1)
    assert hermite_recursive(4, 2).poly == 16 * X ** 4 - 64 * X ** 2 + 32


def test_generating_examples():
    assert hermite_from_generating(1, 3, K=4).poly == 2 * X
    assert hermite_from_generating(2, 5, K=6).poly == 4 * X ** 2 - 10
    assert hermite_from_generating(0, 2, K=0).poly == Poly.const(1)
    with pytest.raises(ValueError):
        hermite_from_generating(3, 2, K=2)


def test_rodrigues_examples():
    assert hermite_rodrigues(1, F(5, 3)).poly == 2 * X
    assert hermite_rodrigues(2, 4).poly == 4 * X ** 2 - 8
    assert hermite_rodrigues(5, 1).poly == H[5]


def test_integral_rep_examples():
    assert hermite_integral_rep(2, 3).poly == 4 * X ** 2 - 6
    assert hermite_integral_rep(1, 6).poly == 2 * X
    assert hermite_integral_rep(4, 1).poly == H[4]


@pytest.mark.parametrize("n,p", [(3, 2), (0, 7), (6, 5)])
def test_ode_residual_examples(n, p):
    assert ode_residual(n, p).is_zero()


def test_orthonormality_examples():
    for p in (1, 3, F(1, 2)):
        assert orthonormality_integral(1, 1, p).value == 2 * F(p)
        assert orthonormality_integral(3, 2, p).value == 0
    assert orthonormality_integral(2, 0, 3).value == 0


def test_degree_check():
    with pytest.raises(ValueError):
        HermiteP(2, F(1), Poly([1, 2]))
    with pytest.raises(ValueError):
        hermite_explicit(-1, 2)


@given(st.integers(0, 14), positive_p)
def test_routes_agree(n, p):
    polys = {route(n, p).poly for route in ROUTES.values()}
    assert len(polys) == 1
    assert hermite_parity_form(n, p).poly == hermite_explicit(n, p).poly


@given(st.integers(0, 14), positive_p)
def test_leading_coefficient_and_parity(n, p):
    h = hermite_explicit(n, p).poly
    assert h.leading == 2 ** n
    assert h.reflect() == h * (-1) ** n


@given(st.integers(1, 14), positive_p)
def test_lowering_relation(n, p):
    from paraherm.defcalc import deformed_derivative
    assert deformed_derivative(hermite_explicit(n, p).poly, p) == \
        2 * deformed_number(n, p) * hermite_explicit(n - 1, p).poly


@given(st.integers(0, 8), st.integers(0, 8), positive_p)
def test_orthonormality_property(n, m, p):
    want = 2 ** n * deformed_factorial(n, p) if n == m else 0
    assert orthonormality_integral(n, m, p).value == want


def test_table_symbolic_in_p():
    """Coefficients of H_n, n <= 6, are polynomials of degree <= 3 in p; six points fix them."""
    ps = [F(1), F(2), F(3), F(5), F(1, 3), F(17, 4)]
    for n in range(7):
        for p in ps:
            assert hermite_explicit(n, p).poly == hermite_table(n, p)


@pytest.mark.parametrize("n", range(21))
def test_p1_matches_numpy_hermite(n):
    classical = np.polynomial.hermite.herm2poly([0] * n + [1])
    assert np.array_equal(np.array(hermite_explicit(n, 1).poly.to_floats()), classical)

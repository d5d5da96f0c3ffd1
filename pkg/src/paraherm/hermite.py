"""Deformed Hermite polynomials ``H_n^(p)``.

Five independent constructions are provided (explicit sum, three-term
recursion, generating function, Rodrigues formula, integral representation);
they must agree coefficient-wise. Everything is exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .defcalc import (
    GaussPoly,
    MomentValue,
    deform_param,
    deformed_binomial_coeffs,
    deformed_derivative,
    deformed_exp_poly,
    deformed_factorial,
    deformed_number,
    gaussian_moment,
    integrate_gauss_poly,
)
from .gaussrat import GaussRational, I
from .poly import Poly, X

__all__ = [
    "HermiteP",
    "hermite_explicit",
    "hermite_parity_form",
    "hermite_recursive",
    "hermite_from_generating",
    "hermite_rodrigues",
    "hermite_integral_rep",
    "hermite",
    "ode_residual",
    "orthonormality_integral",
    "ResidualImaginaryError",
    "ROUTES",
]


class ResidualImaginaryError(ArithmeticError):
    """Imaginary parts failed to cancel in the integral representation."""


@dataclass(frozen=True)
class HermiteP:
    n: int
    p: Fraction
    poly: Poly

    def __post_init__(self):
        if self.poly.degree != self.n:
            raise ValueError(f"H_{self.n} must have degree {self.n}, got {self.poly.degree}")

    def __call__(self, x):
        return self.poly(x)

    def __str__(self):
        return self.poly.to_str()


def _check_n(n: int) -> None:
    if n < 0:
        raise ValueError("n must be non-negative")


def hermite_explicit(n: int, p) -> HermiteP:
    """``[n]! sum_k (-1)^k (2x)^(n-2k) / (k! [n-2k]!)``, ``k = 0..floor(n/2)``."""
    _check_n(n)
    p = deform_param(p)
    fn = deformed_factorial(n, p)
    coeffs = [Fraction(0)] * (n + 1)
    for k in range(n // 2 + 1):
        j = n - 2 * k
        coeffs[j] = fn * (-1) ** k * 2 ** j / (factorial(k) * deformed_factorial(j, p))
    return HermiteP(n, p, Poly(coeffs))


def hermite_parity_form(n: int, p) -> HermiteP:
    """Same polynomial written as a sum over ascending powers of one parity."""
    _check_n(n)
    p = deform_param(p)
    l, odd = divmod(n, 2)
    fn = deformed_factorial(n, p)
    coeffs = [Fraction(0)] * (n + 1)
    for k in range(l + 1):
        j = 2 * k + odd
        coeffs[j] = (-1) ** l * fn * (-1) ** k * 2 ** j / (factorial(l - k) * deformed_factorial(j, p))
    return HermiteP(n, p, Poly(coeffs))


@lru_cache(maxsize=256)
def _recursive_table(p: Fraction, n: int) -> tuple:
    table = [Poly.const(1), Poly([0, 2])]
    for k in range(1, n):
        table.append(table[k].mul_x() * 2 - table[k - 1] * (2 * deformed_number(k, p)))
    return tuple(table[: n + 1])


def hermite_recursive(n: int, p) -> HermiteP:
    """``H_{n+1} = 2x H_n - 2[n] H_{n-1}`` from ``H_0 = 1``, ``H_1 = 2x``."""
    _check_n(n)
    p = deform_param(p)
    return HermiteP(n, p, _recursive_table(p, n)[n])


def hermite_from_generating(n: int, p, K: int | None = None) -> HermiteP:
    """``[n]!`` times the ``t^n`` coefficient of ``exp(-t^2) E(2tx)``, both truncated at order ``K``."""
    _check_n(n)
    p = deform_param(p)
    if K is None:
        K = n + 2
    if K < n:
        raise ValueError(f"truncation order K={K} is below n={n}")
    gauss = [Fraction((-1) ** (j // 2), factorial(j // 2)) if j % 2 == 0 else Fraction(0)
             for j in range(K + 1)]
    # E(2tx) = sum_j (2x)^j / [j]! t^j: coefficient of t^j is a monomial in x
    e_coeffs = deformed_exp_poly(K, p).coeffs
    exp_series = [Poly.monomial(j, e_coeffs[j] * 2 ** j) for j in range(K + 1)]
    tn = Poly()
    for i in range(n + 1):
        if gauss[i]:
            tn = tn + exp_series[n - i] * gauss[i]
    return HermiteP(n, p, tn * deformed_factorial(n, p))


def hermite_rodrigues(n: int, p) -> HermiteP:
    """``(-1)^n exp(x^2) D^n exp(-x^2)`` via repeated deformed differentiation of a weighted polynomial."""
    _check_n(n)
    p = deform_param(p)
    f = GaussPoly(Poly.const(1), weighted=True)
    for _ in range(n):
        f = deformed_derivative(f, p)
    return HermiteP(n, p, f.poly * (-1) ** n)


def hermite_integral_rep(n: int, p) -> HermiteP:
    """``2^n N0^2 int Dt [x + it]^n exp(-t^2)`` in Gaussian-rational arithmetic.

    ``[x + it]^n`` is the deformed binomial; the ``t`` integral is taken
    moment by moment so the ``N0^2`` factor cancels exactly.
    """
    _check_n(n)
    p = deform_param(p)
    binom = deformed_binomial_coeffs(n, p)
    acc = Poly()
    for k, b in enumerate(binom):
        moment = gaussian_moment(k, p).value
        if not moment:
            continue
        acc = acc + Poly.monomial(n - k, GaussRational(b * 2 ** n) * I ** k * moment)
    if not acc.is_real:
        raise ResidualImaginaryError(f"non-cancelling imaginary coefficients in H_{n}")
    return HermiteP(n, p, acc)


ROUTES = {
    "explicit": hermite_explicit,
    "recursive": hermite_recursive,
    "generating": hermite_from_generating,
    "rodrigues": hermite_rodrigues,
    "integral": hermite_integral_rep,
}


def hermite(n: int, p) -> Poly:
    """Convenience accessor returning the polynomial of ``H_n^(p)``."""
    return hermite_recursive(n, p).poly


def ode_residual(n: int, p) -> Poly:
    """``D^2 H_n - 2x D H_n + 2[n] H_n``; the zero polynomial when everything is consistent."""
    h = hermite_explicit(n, p).poly
    dh = deformed_derivative(h, p)
    d2h = deformed_derivative(dh, p)
    return d2h - dh.mul_x() * 2 + h * (2 * deformed_number(n, p))


def orthonormality_integral(n: int, m: int, p) -> MomentValue:
    """``int Dx exp(-x^2) H_n H_m`` in units of ``N0^-2``."""
    if (n + m) % 2:
        # integrand is odd; the deformed integral reduces to the ordinary one
        return MomentValue(Fraction(0))
    hn = hermite_explicit(n, p).poly
    hm = hermite_explicit(m, p).poly
    return integrate_gauss_poly(GaussPoly(hn * hm, weighted=True), p)

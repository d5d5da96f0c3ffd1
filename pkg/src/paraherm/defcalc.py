"""Parity-deformed calculus.

The deformation is controlled by the paraquantization order ``p``.  Every
operation here is exact (``Fraction`` / ``GaussRational`` arithmetic) except
:func:`series_integral_oracle`, which is a floating-point cross-check.

``p = 1`` reduces every operation to ordinary calculus.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.integrate import cumulative_simpson
from scipy.interpolate import CubicSpline

from .poly import Poly

__all__ = [
    "DeformParam",
    "GaussPoly",
    "MomentValue",
    "SeriesDivergenceError",
    "SingularIntegrandError",
    "deform_param",
    "deformed_number",
    "deformed_factorial",
    "deformed_derivative",
    "deformed_exp_partial",
    "deformed_exp_poly",
    "deformed_antiderivative",
    "deformed_definite_integral",
    "series_integral_oracle",
    "OracleResult",
    "gaussian_moment",
    "integrate_gauss_poly",
    "deformed_binomial_coeffs",
]

DeformParam = Fraction


def deform_param(p) -> Fraction:
    """Validate and normalize a deformation order to an exact positive rational."""
    if isinstance(p, bool):
        raise TypeError("p must be a rational number")
    if isinstance(p, str):
        p = Fraction(p)
    q = Fraction(p)
    if q <= 0:
        raise ValueError(f"deformation order must be positive, got {p!r}")
    return q


def deformed_number(n: int, p) -> Fraction:
    """``[n] = n + (p-1)/2 (1 - (-1)^n)``: ``n`` for even ``n``, ``n + p - 1`` for odd."""
    if n < 0:
        raise ValueError("n must be non-negative")
    p = deform_param(p)
    return Fraction(n) + (p - 1 if n % 2 else 0)


@lru_cache(maxsize=None)
def _factorials(p: Fraction, n: int) -> tuple:
    out = [Fraction(1)]
    for k in range(1, n + 1):
        out.append(out[-1] * deformed_number(k, p))
    return tuple(out)


def deformed_factorial(n: int, p) -> Fraction:
    """``[n]! = [n][n-1]...[1]`` with ``[0]! = 1``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return _factorials(deform_param(p), n)[n]


@dataclass(frozen=True)
class GaussPoly:
    """``poly(x)``, or ``poly(x) * exp(-x^2)`` when ``weighted`` is set."""

    poly: Poly
    weighted: bool = False

    def __mul__(self, other):
        if isinstance(other, GaussPoly):
            if self.weighted and other.weighted:
                raise ValueError("product carries exp(-2x^2); not representable")
            return GaussPoly(self.poly * other.poly, self.weighted or other.weighted)
        if isinstance(other, Poly):
            return GaussPoly(self.poly * other, self.weighted)
        return GaussPoly(self.poly * other, self.weighted)

    __rmul__ = __mul__

    def __add__(self, other: GaussPoly) -> GaussPoly:
        if self.weighted != other.weighted:
            raise ValueError("cannot add weighted and unweighted terms")
        return GaussPoly(self.poly + other.poly, self.weighted)

    def __sub__(self, other: GaussPoly) -> GaussPoly:
        return self + GaussPoly(-other.poly, other.weighted)

    def is_even(self) -> bool:
        return self.poly.is_even()


def _d_poly(f: Poly, p: Fraction) -> Poly:
    return Poly(deformed_number(k, p) * c for k, c in enumerate(f.coeffs) if k)


def deformed_derivative(f, p):
    """Apply ``D = d/dx + (p-1)/(2x) (1 - R)`` to a polynomial or Gaussian-weighted polynomial.

    On monomials ``D x^n = [n] x^(n-1)``. The weight ``exp(-x^2)`` is even, so
    for weighted input the product rule gives ``(D poly - 2x poly) exp(-x^2)``.
    A plain :class:`Poly` argument returns a plain :class:`Poly`.
    """
    p = deform_param(p)
    if isinstance(f, Poly):
        return _d_poly(f, p)
    dp = _d_poly(f.poly, p)
    if f.weighted:
        dp = dp - f.poly.mul_x() * 2
    return GaussPoly(dp, f.weighted)


def deformed_exp_partial(x, K: int, p) -> Fraction:
    """Partial sum ``sum_{n<=K} x^n / [n]!`` of the deformed exponential."""
    if K < 0:
        raise ValueError("K must be non-negative")
    p = deform_param(p)
    fact = _factorials(p, K)
    x = Fraction(x) if not isinstance(x, Fraction) else x
    total, xn = Fraction(0), Fraction(1)
    for n in range(K + 1):
        total += xn / fact[n]
        xn *= x
    return total


def deformed_exp_poly(K: int, p) -> Poly:
    """Truncated deformed exponential as a polynomial in ``x``."""
    fact = _factorials(deform_param(p), K)
    return Poly(1 / f for f in fact)


def deformed_antiderivative(f: Poly, p) -> Poly:
    """Term-wise ``x^n -> x^(n+1) / [n+1]``; integration constant fixed to zero."""
    p = deform_param(p)
    return Poly([0] + [c / deformed_number(k + 1, p) for k, c in enumerate(f.coeffs)])


def deformed_definite_integral(f: Poly, a, b, p) -> Fraction:
    """``F(b) - F(a)`` with ``F`` the deformed antiderivative of ``f``."""
    F = deformed_antiderivative(f, p)
    return F(Fraction(b)) - F(Fraction(a))


# --------------------------------------------------------------------------
# numerical oracle: alternating iterated-series form of the definite integral


class SeriesDivergenceError(ArithmeticError):
    """The iterated series failed to converge within the requested depth."""


class SingularIntegrandError(ArithmeticError):
    """A ``(1 - R)/2x`` factor met a non-vanishing odd part at ``x = 0``."""


@dataclass(frozen=True)
class OracleResult:
    value: float
    tolerance: float
    terms: tuple
    accelerated: bool

    def __float__(self):
        return self.value


def _wynn_epsilon(partial_sums):
    """Best Shanks/Wynn-epsilon estimate and its error from a list of partial sums.

    Exact for sums of finitely many geometric sequences, including the
    divergent ones (the transform returns the analytic-continuation value).
    """
    s = [float(v) for v in partial_sums]
    best_val, best_err = s[-1], abs(s[-1] - s[-2]) if len(s) > 1 else math.inf
    prev = [0.0] * (len(s) + 1)
    cur = list(s)
    col = 0
    while len(cur) > 1:
        nxt = []
        for j in range(len(cur) - 1):
            diff = cur[j + 1] - cur[j]
            if diff == 0.0:
                if col % 2 == 0:
                    # estimate column converged exactly
                    return cur[j + 1], 0.0
                return best_val, best_err
            nxt.append(prev[j + 1] + 1.0 / diff)
        prev, cur = cur, nxt
        col += 1
        if col % 2 == 0 and len(cur) >= 2:
            err = abs(cur[-1] - cur[-2])
            if err < best_err:
                best_val, best_err = cur[-1], err
    return best_val, best_err


def series_integral_oracle(f: Poly, a: float, b: float, p, depth: int = 12,
                           steps: int = 4097, tol: float = 1e-10,
                           accept: float = 1e-6) -> OracleResult:
    """Numerically evaluate the alternating iterated series for the deformed definite integral.

    Term ``k`` is ``(-1)^k * int_a^b g_k`` with ``g_0 = f`` and
    ``g_{k+1}(x) = (p-1)/(2x) * (G_k(x) - G_k(-x))``, ``G_k(x) = int_a^x g_k``.
    Every ordinary integral uses composite Simpson quadrature on a symmetric
    ``steps``-point grid over ``[-L, L]``, ``L = max(|a|, |b|)``; ``f`` is only
    sampled, never integrated symbolically.

    The raw series stops once ``|term| < tol``. For ``p - 1 >= n + 1`` the
    even-degree components grow geometrically, so when the raw sum has not
    converged after ``depth`` terms the partial sums are resummed with Wynn's
    epsilon algorithm; the reported tolerance is then the spread of the last
    two accelerated estimates, and anything above ``accept`` raises
    :class:`SeriesDivergenceError`.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if steps < 16:
        raise ValueError("steps must be >= 16")
    p = float(deform_param(p))
    a, b = float(a), float(b)
    L = max(abs(a), abs(b))
    if L == 0.0:
        return OracleResult(0.0, 0.0, (0.0,), False)
    half = max(8, (steps - 1) // 2)
    xs = np.linspace(0.0, L, half + 1)
    grid = np.concatenate([-xs[:0:-1], xs])
    mid = half
    coeffs = np.array(f.to_floats(), dtype=float) if not f.is_zero() else np.zeros(1)
    g = np.polynomial.polynomial.polyval(grid, coeffs)

    def primitive_from_zero(vals):
        # G(x) = int_0^x g on both half-grids
        right = cumulative_simpson(vals[mid:], x=xs, initial=0.0)
        left = -cumulative_simpson(vals[mid::-1], x=xs, initial=0.0)
        return np.concatenate([left[:0:-1], right])

    def integral_ab(vals):
        G = CubicSpline(grid, primitive_from_zero(vals))
        return float(G(b) - G(a))

    terms, partial = [], []
    total = 0.0
    for k in range(depth):
        t = (-1) ** k * integral_ab(g)
        terms.append(t)
        total += t
        partial.append(total)
        if p == 1.0:
            # every correction term carries a factor p - 1
            return OracleResult(total, tol, tuple(terms), False)
        if abs(t) < tol and k > 0:
            return OracleResult(total, tol, tuple(terms), False)
        G = primitive_from_zero(g)
        odd = 0.5 * (G - G[::-1])
        scale = max(1.0, float(np.max(np.abs(G))))
        if abs(odd[mid]) > 1e-12 * scale:
            raise SingularIntegrandError("odd part does not vanish at x = 0")
        nxt = np.empty_like(g)
        nz = np.arange(grid.size) != mid
        nxt[nz] = (p - 1.0) * odd[nz] / grid[nz]
        # limit x -> 0 of odd(G)/x is the even part of g at 0
        nxt[mid] = (p - 1.0) * g[mid]
        g = nxt
    if abs(terms[-1]) < tol:
        return OracleResult(total, tol, tuple(terms), False)
    value, err = _wynn_epsilon(partial)
    err = max(err, tol)
    if not math.isfinite(value) or err > accept:
        raise SeriesDivergenceError(
            f"series did not converge: last term {terms[-1]:.3e}, accelerated spread {err:.3e}")
    return OracleResult(value, err, tuple(terms), True)


# --------------------------------------------------------------------------
# full-line Gaussian integrals, in units of N0^-2


@dataclass(frozen=True)
class MomentValue:
    """A full-line deformed Gaussian integral equal to ``value * N0^-2``.

    ``N0`` is kept symbolic: ``int Dt exp(-t^2) = N0^-2`` by definition.
    """

    value: object
    unit: str = "N0^-2"

    def __add__(self, other: MomentValue) -> MomentValue:
        return MomentValue(self.value + other.value)

    def __mul__(self, c) -> MomentValue:
        return MomentValue(self.value * c)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, MomentValue):
            return self.value == other.value
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __str__(self):
        return f"{self.value} {self.unit}" if self.value else "0"


def gaussian_moment(k: int, p) -> MomentValue:
    """``int Dt t^k exp(-t^2)``: ``[1][3]...[2n-1]/2^n`` for ``k = 2n``, zero for odd ``k``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    p = deform_param(p)
    if k % 2:
        return MomentValue(Fraction(0))
    val = Fraction(1)
    for j in range(1, k, 2):
        val *= deformed_number(j, p) / 2
    return MomentValue(val)


def integrate_gauss_poly(f: GaussPoly, p) -> MomentValue:
    """Full-line deformed integral of ``poly(x) exp(-x^2)``, by linearity over moments."""
    if not f.weighted:
        raise ValueError("only Gaussian-weighted polynomials are integrable on the full line")
    total = Fraction(0)
    for k, c in enumerate(f.poly.coeffs):
        if c and k % 2 == 0:
            total = total + c * gaussian_moment(k, p).value
    return MomentValue(total)


def deformed_binomial_coeffs(n: int, p) -> tuple:
    """``[n]! / ([k]! [n-k]!)`` for ``k = 0..n``."""
    fact = _factorials(deform_param(p), n)
    return tuple(fact[n] / (fact[k] * fact[n - k]) for k in range(n + 1))

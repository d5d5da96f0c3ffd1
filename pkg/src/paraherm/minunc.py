"""Amplitude-squared minimum-uncertainty states ``|psi(m, lambda)>``.

The eigenvalue problem ``(Y1 + i lambda Y2)|psi> = beta |psi>`` is moved to a
squeezed frame ``|psi'> = S(z)|psi>`` where it becomes a two-term recursion.
With ``beta`` chosen to truncate the series, ``|psi'>`` is a finite
combination of number states (a deformed Hermite polynomial in ``a+`` acting
on the vacuum); the physical state is ``S(z)^-1 |psi'>``.
"""
from __future__ import annotations

import cmath
import math

import numpy as np

from .defcalc import deform_param, deformed_factorial, deformed_number
from .fock import (
    DEFAULT_GUARD,
    LEAKAGE_THRESHOLD,
    FockState,
    SqueezeSpec,
    TruncationError,
    _require_trusted,
    apply_poly_in_creation,
    apply_squeeze,
    build_operators,
    expect,
    make_state,
    variance,
    variances_xP,
)
from .hermite import hermite_explicit

__all__ = [
    "squeeze_params",
    "beta_value",
    "gamma_value",
    "required_dim",
    "psi_prime_coeffs",
    "psi_prime_from_hermite",
    "min_uncertainty_state",
    "asq_statistics",
    "eigen_residual",
    "normalization_constants",
    "normalization_closed_form",
    "mean_number_general",
    "mean_number_closed_form",
    "psi1_statistics_closed_form",
    "quadrature_report",
]


def _check_lambda(lam: float) -> float:
    lam = float(lam)
    if not lam > 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    return lam


def squeeze_params(lam: float) -> SqueezeSpec:
    """Squeeze ``z = r e^{i theta}`` that removes the ``(a+)^2`` term.

    ``0 < lambda < 1``: ``theta = pi/2``, ``sinh r = sqrt((1 - lambda)/(2 lambda))``;
    ``lambda >= 1``: ``theta = 0``, ``sinh r = sqrt((lambda - 1)/2)``.
    """
    lam = _check_lambda(lam)
    if lam < 1:
        return SqueezeSpec(math.asinh(math.sqrt((1 - lam) / (2 * lam))), math.pi / 2)
    return SqueezeSpec(math.asinh(math.sqrt((lam - 1) / 2)), 0.0)


def beta_value(m: int, lam: float, p) -> complex:
    p = float(deform_param(p))
    lam = _check_lambda(lam)
    if lam < 1:
        return 1j * math.sqrt(1 - lam * lam) * (m + p / 2)
    return math.sqrt(lam * lam - 1) * (m + p / 2)


def gamma_value(lam: float) -> complex:
    lam = _check_lambda(lam)
    if lam < 1:
        return cmath.exp(1j * math.pi / 4) * math.sqrt(math.sqrt(1 - lam * lam) / 2)
    return complex(math.sqrt(math.sqrt(lam * lam - 1) / (2 * lam)))


def required_dim(lam: float, base: int = 64) -> int:
    """Smallest power of two ``>= base * cosh 2r``; ``cosh 2r = max(lambda, 1/lambda)``."""
    lam = _check_lambda(lam)
    need = base * max(lam, 1 / lam)
    return 1 << max(1, math.ceil(math.log2(need - 1e-9)))


def psi_prime_coeffs(m: int, lam: float, p) -> np.ndarray:
    """Unnormalized squeezed-frame coefficients ``c_0..c_m`` from the two-term recursion.

    ``c_{n+2} = (beta - kappa (n + p/2)) / (den * sqrt([n+1][n+2])) c_n`` with
    ``kappa = i sqrt(1 - lambda^2)``, ``den = 1`` below the branch point and
    ``kappa = sqrt(lambda^2 - 1)``, ``den = lambda`` above it. The seed is the
    coefficient of parity ``m`` (``c_0`` or ``c_1``) set to one.
    """
    if m < 0:
        raise ValueError("m must be non-negative")
    lam = _check_lambda(lam)
    pf = float(deform_param(p))
    beta = beta_value(m, lam, pf)
    if lam < 1:
        kappa, den = 1j * math.sqrt(1 - lam * lam), 1.0
    else:
        kappa, den = complex(math.sqrt(lam * lam - 1)), lam
    c = np.zeros(m + 1, dtype=complex)
    c[m % 2] = 1.0
    for n in range(m % 2, m - 1, 2):
        br = float(deformed_number(n + 1, pf) * deformed_number(n + 2, pf))
        c[n + 2] = (beta - kappa * (n + pf / 2)) / (den * math.sqrt(br)) * c[n]
    return c


def psi_prime_from_hermite(m: int, lam: float, p, dim: int, guard: int = DEFAULT_GUARD) -> FockState:
    """Normalized ``H_m(i gamma a+)|0>`` in a ``dim``-level space.

    For odd ``m`` the polynomial is ``y Q(y)`` and the state is built as
    ``a+ Q(i gamma a+)|0>`` (global factor dropped), which stays well defined
    at ``lambda = 1`` where ``gamma = 0``.
    """
    if not 0 <= m < dim:
        raise ValueError("need 0 <= m < dim")
    pf = float(deform_param(p))
    vac = np.zeros(dim, dtype=complex)
    vac[0] = 1.0
    h = hermite_explicit(m, p).poly.to_floats()
    scale = 1j * gamma_value(lam)
    if m % 2:
        v = build_operators(dim, pf).ad @ apply_poly_in_creation(h[1:], scale, vac, pf)
    else:
        v = apply_poly_in_creation(h, scale, vac, pf)
    return make_state(v, pf, guard, what=f"psi'({m},{lam})")


def min_uncertainty_state(m: int, lam: float, p, dim: int | None = None,
                          guard: int = DEFAULT_GUARD, threshold: float = LEAKAGE_THRESHOLD,
                          check_dim: bool = True) -> FockState:
    """``|psi(m, lambda)> = S(z)^-1 |psi'(m, lambda)>``.

    ``dim`` defaults to :func:`required_dim`; a smaller explicit ``dim`` is
    rejected unless ``check_dim`` is false.
    """
    lam = _check_lambda(lam)
    need = required_dim(lam)
    if dim is None:
        dim = max(need, 2 * (m + guard))
    if check_dim and dim < need:
        raise TruncationError(f"lambda={lam} needs dim >= {need}, got {dim}")
    if not 0 <= m < dim:
        raise ValueError("need 0 <= m < dim")
    pf = float(deform_param(p))
    prime = psi_prime_from_hermite(m, lam, pf, dim, guard)
    spec = squeeze_params(lam)
    v = apply_squeeze(-spec.z, np.array(prime.amplitudes), pf)
    return make_state(v, pf, guard, threshold, normalize=False, what=f"psi({m},{lam})")


def asq_statistics(state: FockState, strict: bool = True) -> tuple[float, float, float]:
    """``(<N>, var Y1, var Y2)``."""
    _require_trusted(state, strict)
    ops = build_operators(state.dim, state.p)
    v = state.amplitudes
    return expect(ops.N, v).real, variance(ops.Y1, v), variance(ops.Y2, v)


def eigen_residual(state: FockState, m: int, lam: float, p=None, dim: int | None = None,
                   strict: bool = True) -> float:
    """``||(Y1 + i lambda Y2 - beta)|psi>||`` over the rows below the guard levels."""
    _require_trusted(state, strict)
    if dim is not None and dim != state.dim:
        raise ValueError(f"state has dim {state.dim}, not {dim}")
    pf = state.p if p is None else float(deform_param(p))
    ops = build_operators(state.dim, pf)
    v = state.amplitudes
    lam = _check_lambda(lam)
    w = ops.Y1 @ v + 1j * lam * (ops.Y2 @ v) - beta_value(m, lam, pf) * v
    return float(np.linalg.norm(w[: state.dim - state.guard]))


def _reduced_norm(m: int, g2: float, p) -> float:
    # sum_j h_j^2 g2^(j - m%2) [j]!; all surviving j share the parity of m
    h = hermite_explicit(m, p).poly
    return float(sum(float(c) ** 2 * g2 ** (j - m % 2) * float(deformed_factorial(j, p))
                     for j, c in enumerate(h.coeffs) if c))


def normalization_constants(m: int, lam: float, p) -> float:
    """``|c_m|^-2 = || H_m(i gamma a+)|0> ||^2 = sum_j h_j^2 |gamma|^(2j) [j]!``."""
    p = deform_param(p)
    g2 = abs(gamma_value(lam)) ** 2
    return g2 ** (m % 2) * _reduced_norm(m, g2, p)


def normalization_closed_form(m: int, lam: float, p) -> float:
    """Tabulated ``|c_m|^-2`` for ``m <= 2``."""
    g2 = abs(gamma_value(lam)) ** 2
    p = deform_param(p)
    if m == 0:
        return 1.0
    if m == 1:
        return 4 * float(deformed_number(1, p)) * g2
    if m == 2:
        f2 = float(deformed_factorial(2, p))
        return 16 * f2 * g2 ** 2 + f2 ** 2
    raise ValueError("closed form only tabulated for m <= 2")


def mean_number_general(m: int, lam: float, p) -> float:
    """``<N>`` from the general expression with the ``|c_m|^2 / |c_{m-1}|^2`` term.

    The ratio term is evaluated with the powers of ``|gamma|^2`` cancelled
    analytically, so the expression is finite at ``lambda = 1``.
    """
    lam = _check_lambda(lam)
    pf = float(deform_param(p))
    sign = 1 if m % 2 == 0 else -1
    g2 = abs(gamma_value(lam)) ** 2
    if m:
        # lambda*sqrt(1-lambda^2) = 2 lambda g2 and sqrt(lambda^2-1)/lambda^2 = 2 g2 / lambda
        kfac = 2 * lam if lam < 1 else 2 / lam
        power = 1 + (m - 1) % 2 - m % 2
        ratio_term = (2 * float(deformed_number(m, pf)) ** 2 * kfac * g2 ** power
                      * _reduced_norm(m - 1, g2, pf) / _reduced_norm(m, g2, pf))
    else:
        ratio_term = 0.0
    if lam < 1:
        return (1 - lam * lam) / lam * (m + pf / 2) + (1 + (pf - 1) * sign) / 2 * lam + ratio_term
    return (lam * lam - 1) / lam * (m + pf / 2) + (1 + (pf - 1) * sign) / (2 * lam) + ratio_term


def mean_number_closed_form(m: int, lam: float, p) -> float:
    """Closed-form ``<N>`` for ``m <= 2``.

    For ``m = 2, lambda >= 1`` the denominator is ``2(2+p) lambda^2 - 4``; this
    is the form that the general expression reduces to.
    """
    lam = _check_lambda(lam)
    pf = float(deform_param(p))
    if m == 0:
        return pf / (2 * lam) if lam < 1 else pf * lam / 2
    if m == 1:
        return (2 + pf) / (2 * lam) if lam < 1 else (2 + pf) * lam / 2
    if m == 2:
        num = (2 + pf) * (4 + pf)
        if lam < 1:
            return (num - (8 + 6 * pf) * lam ** 2) / (2 * lam * (2 + pf - 2 * lam ** 2))
        return (num * lam ** 3 - (8 + 6 * pf) * lam) / (2 * (2 + pf) * lam ** 2 - 4)
    raise ValueError("closed form only available for m <= 2")


def psi1_statistics_closed_form(lam: float, p) -> tuple[float, float, float]:
    """``(<N>, var Y1, var Y2)`` for ``|psi(1, lambda)>``."""
    lam = _check_lambda(lam)
    pf = float(deform_param(p))
    if lam < 1:
        return (2 + pf) / (2 * lam), 1 + pf / 2, (2 + pf) / (2 * lam ** 2)
    return (2 + pf) * lam / 2, (2 + pf) * lam ** 2 / 2, 1 + pf / 2


def quadrature_report(state: FockState, m: int) -> dict:
    """Ordinary quadrature variances against reference values.

    References are the vacuum (``p/2``), the number state ``|m>``
    (``m + p/2``) and the commutator floor ``|<[x, P]>|^2 / 4 =
    (1 + (p-1)<R>)^2 / 4`` on the product. Purely descriptive; no pass/fail.
    """
    ops = build_operators(state.dim, state.p)
    vx, vp = variances_xP(state)
    r_mean = expect(ops.R, state.amplitudes).real
    floor = (1 + (state.p - 1) * r_mean) ** 2 / 4
    return {
        "var_x": vx,
        "var_P": vp,
        "product": vx * vp,
        "floor": floor,
        "vacuum_reference": state.p / 2,
        "number_state_reference": m + state.p / 2,
        "below_vacuum": bool(min(vx, vp) < state.p / 2),
        "below_number_state": bool(min(vx, vp) < m + state.p / 2),
    }

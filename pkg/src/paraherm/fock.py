"""Truncated parabose Fock space: operators, squeezing and squeezed number states.

The basis ``|0>, ..., |dim-1>`` is cut off at ``dim``; the top ``guard``
levels are treated as a buffer. A state's *leakage* is its probability mass
in that buffer, and any number derived from a state with leakage above
``LEAKAGE_THRESHOLD`` is untrusted.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
import scipy.sparse as sp
from scipy.linalg import expm
from scipy.sparse.linalg import expm_multiply

from .defcalc import deform_param
from .hermite import hermite_explicit

__all__ = [
    "DEFAULT_DIM",
    "DEFAULT_GUARD",
    "LEAKAGE_THRESHOLD",
    "TruncationError",
    "TruncationWarning",
    "FockOperator",
    "FockState",
    "SqueezeSpec",
    "OperatorSet",
    "build_operators",
    "commutator_residuals",
    "r_max_for",
    "squeeze_generator",
    "squeeze_operator",
    "squeeze_direct",
    "squeeze_disentangled",
    "apply_squeeze",
    "apply_poly_in_creation",
    "number_state",
    "make_state",
    "squeezed_number_state",
    "squeezed_number_state_closed",
    "trusted_columns",
    "route_overlaps",
    "expect",
    "variance",
    "variances_xP",
    "operator_identity_checks",
]

DEFAULT_DIM = 128
DEFAULT_GUARD = 16
LEAKAGE_THRESHOLD = 1e-10


class TruncationError(RuntimeError):
    """A requested quantity cannot be trusted at the current truncation."""


class TruncationWarning(UserWarning):
    pass


def _pfloat(p) -> float:
    return float(deform_param(p))


def _bracket(n, p: float):
    """Deformed numbers ``[n]`` as floats; ``n`` may be an integer array."""
    n = np.asarray(n)
    return n + (p - 1.0) * (n % 2)


@dataclass(frozen=True)
class FockOperator:
    matrix: np.ndarray
    dim: int
    p: float

    def __matmul__(self, other):
        if isinstance(other, FockOperator):
            return FockOperator(self.matrix @ other.matrix, self.dim, self.p)
        if isinstance(other, FockState):
            return self.matrix @ other.amplitudes
        return self.matrix @ other

    def column(self, n: int) -> np.ndarray:
        return self.matrix[:, n]


@dataclass(frozen=True)
class FockState:
    amplitudes: np.ndarray
    dim: int
    p: float
    guard: int = DEFAULT_GUARD
    leakage: float = 0.0
    threshold: float = LEAKAGE_THRESHOLD

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    @property
    def trusted(self) -> bool:
        return self.leakage < self.threshold

    def overlap(self, other: FockState) -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))


@dataclass(frozen=True)
class SqueezeSpec:
    """Squeeze parameter ``z = r exp(i theta)``."""

    r: float
    theta: float = 0.0

    def __post_init__(self):
        if self.r < 0:
            raise ValueError("r must be non-negative")
        if not 0.0 <= self.theta < 2 * math.pi:
            raise ValueError("theta must lie in [0, 2pi)")

    @property
    def z(self) -> complex:
        return self.r * complex(math.cos(self.theta), math.sin(self.theta))


@dataclass(frozen=True)
class OperatorSet:
    dim: int
    p: float
    a: np.ndarray
    ad: np.ndarray
    R: np.ndarray
    N: np.ndarray
    x: np.ndarray
    P: np.ndarray
    Y1: np.ndarray
    Y2: np.ndarray
    a2: np.ndarray = field(repr=False)
    ad2: np.ndarray = field(repr=False)


def _frozen(m: np.ndarray) -> np.ndarray:
    m.setflags(write=False)
    return m


@lru_cache(maxsize=32)
def _build(dim: int, p: float) -> OperatorSet:
    n = np.arange(dim)
    a = np.zeros((dim, dim), dtype=complex)
    a[n[:-1], n[1:]] = np.sqrt(_bracket(n[1:], p))
    ad = a.conj().T.copy()
    R = np.diag((-1.0) ** n).astype(complex)
    # {a+, a}/2 = n + p/2 exactly; the truncated product is wrong on the top level
    N = np.diag(n + p / 2).astype(complex)
    a2, ad2 = a @ a, ad @ ad
    return OperatorSet(
        dim=dim, p=p,
        a=_frozen(a), ad=_frozen(ad), R=_frozen(R), N=_frozen(N),
        x=_frozen((a + ad) / math.sqrt(2)),
        P=_frozen((a - ad) / (1j * math.sqrt(2))),
        Y1=_frozen((a2 + ad2) / 2),
        Y2=_frozen((a2 - ad2) / 2j),
        a2=_frozen(a2), ad2=_frozen(ad2),
    )


def build_operators(dim: int, p) -> OperatorSet:
    """Truncated ``a, a+, R, N, x, P, Y1, Y2`` with ``a|n> = sqrt([n]) |n-1>``."""
    if dim < 2:
        raise ValueError("dim must be at least 2")
    return _build(int(dim), _pfloat(p))


def _rel_residual(res: np.ndarray, bound: np.ndarray) -> float:
    """Largest ``|res_ij| / max(1, bound_ij)``; ``bound`` is the entrywise size of the summed terms."""
    return float(np.max(np.abs(res) / np.maximum(bound, 1.0)))


def commutator_residuals(ops: OperatorSet, guard: int = DEFAULT_GUARD, nmax: int = 5) -> dict:
    """Residuals of the deformed Heisenberg relations on the first ``dim - guard`` columns.

    Each residual is measured entrywise relative to ``max(1, |terms|)``, where
    ``|terms|`` is the entrywise absolute sum of the matrix products involved;
    entries of ``(a+)^n`` grow like ``dim^(n/2)`` and an absolute floor would
    only measure rounding. The ``[a, (a+)^n]`` relation is checked for
    ``n <= min(nmax, guard)``; larger powers push the guarded columns past the
    cutoff.
    """
    if guard < 1:
        raise ValueError("guard must be >= 1")
    dim, p = ops.dim, ops.p
    keep = max(dim - guard, 1)
    eye = np.eye(dim)
    a, ad, R = ops.a, ops.ad, ops.R

    def res(m):
        return float(np.max(np.abs(m[:, :keep])))

    out = {
        "columns": keep,
        "[a,a+] - 1 - (p-1)R": res(a @ ad - ad @ a - eye - (p - 1) * R),
        "{R,a}": res(R @ a + a @ R),
        "{R,a+}": res(R @ ad + ad @ R),
        "R^2 - 1": res(R @ R - eye),
    }
    adn = eye.astype(complex)
    absa = np.abs(a)
    for n in range(1, min(nmax, guard) + 1):
        prev, adn = adn, adn @ ad
        coeff = n * eye + (p - 1) * (1 - (-1) ** n) / 2 * R
        resid = a @ adn - adn @ a - prev @ coeff
        bound = absa @ np.abs(adn) + np.abs(adn) @ absa + np.abs(prev) @ np.abs(coeff)
        out[f"[a,(a+)^{n}]"] = _rel_residual(resid[:, :keep], bound[:, :keep])
    return out


def r_max_for(dim: int) -> float:
    """Largest trusted ``|r|`` at a given cutoff: ``exp(2r)`` stays a factor 16 below ``dim``."""
    return max(0.25, 0.5 * math.log(dim / 16))


def squeeze_generator(z: complex, ops: OperatorSet) -> np.ndarray:
    """``conj(z)/2 a^2 - z/2 (a+)^2``."""
    return np.conj(z) / 2 * ops.a2 - z / 2 * ops.ad2


def squeeze_operator(z: complex, dim: int, p) -> FockOperator:
    """Dense ``S(z) = exp(conj(z)/2 a^2 - z/2 (a+)^2)`` by scaling-and-squaring Pade."""
    ops = build_operators(dim, p)
    return FockOperator(expm(squeeze_generator(z, ops)), ops.dim, ops.p)


def _check_r(r: float, dim: int, r_max: float | None) -> None:
    limit = r_max_for(dim) if r_max is None else r_max
    if abs(r) > limit:
        raise TruncationError(f"|r|={abs(r):.3g} exceeds r_max={limit:.3g} for dim={dim}")


def squeeze_direct(r: float, dim: int = DEFAULT_DIM, p=1, r_max: float | None = None) -> FockOperator:
    """``S(r) = exp(r/2 a^2 - r/2 (a+)^2)`` for real ``r``."""
    _check_r(r, dim, r_max)
    return squeeze_operator(complex(r), dim, p)


def squeeze_disentangled(r: float, dim: int = DEFAULT_DIM, p=1, r_max: float | None = None) -> FockOperator:
    """``S(r)`` as ``exp(-t/2 (a+)^2) exp(-ln(cosh r)/2 {a+,a}) exp(t/2 a^2)``, ``t = tanh r``."""
    _check_r(r, dim, r_max)
    ops = build_operators(dim, p)
    t = math.tanh(r)
    left = expm(-t / 2 * ops.ad2)
    middle = expm(-math.log(math.cosh(r)) / 2 * (2 * ops.N))
    right = expm(t / 2 * ops.a2)
    return FockOperator(left @ middle @ right, ops.dim, ops.p)


@lru_cache(maxsize=32)
def _sparse_ladders(dim: int, p: float):
    n = np.arange(1, dim)
    a = sp.diags(np.sqrt(_bracket(n, p)).astype(complex), 1, shape=(dim, dim), format="csr")
    ad = a.conj().T.tocsr()
    return a @ a, ad @ ad


def apply_squeeze(z: complex, vec: np.ndarray, p) -> np.ndarray:
    """``S(z) vec`` without forming the dense exponential."""
    dim = vec.shape[0]
    a2, ad2 = _sparse_ladders(dim, _pfloat(p))
    gen = (np.conj(z) / 2 * a2 - z / 2 * ad2).tocsc()
    return expm_multiply(gen, vec.astype(complex))


def make_state(vec, p, guard: int = DEFAULT_GUARD, threshold: float = LEAKAGE_THRESHOLD,
               normalize: bool = True, what: str = "state") -> FockState:
    vec = np.asarray(vec, dtype=complex)
    if normalize:
        vec = vec / np.linalg.norm(vec)
    vec.setflags(write=False)
    dim = vec.shape[0]
    g = min(guard, dim - 1)
    leak = float(np.sum(np.abs(vec[dim - g:]) ** 2))
    if leak >= threshold:
        warnings.warn(f"{what}: truncation leakage {leak:.3e} exceeds {threshold:.1e}",
                      TruncationWarning, stacklevel=3)
    return FockState(vec, dim, _pfloat(p), g, leak, threshold)


def number_state(n: int, dim: int = DEFAULT_DIM, p=1, guard: int = DEFAULT_GUARD) -> FockState:
    """``|n> = (a+)^n |0> / sqrt([n]!)``."""
    if not 0 <= n < dim:
        raise ValueError("need 0 <= n < dim")
    ops = build_operators(dim, p)
    v = np.zeros(dim, dtype=complex)
    v[0] = 1.0
    for k in range(1, n + 1):
        v = ops.ad @ v / math.sqrt(_bracket(k, ops.p))
    return make_state(v, p, guard, normalize=False, what=f"|{n}>")


def squeezed_number_state(r: float, n: int, dim: int = DEFAULT_DIM, p=1,
                          guard: int = DEFAULT_GUARD, route: str = "direct",
                          r_max: float | None = None) -> FockState:
    """``|r,n> = S(r)|n>`` with ``S`` from the direct exponential or the disentangled product."""
    if not 0 <= n < dim:
        raise ValueError("need 0 <= n < dim")
    if route == "direct":
        S = squeeze_direct(r, dim, p, r_max)
    elif route == "disentangled":
        S = squeeze_disentangled(r, dim, p, r_max)
    else:
        raise ValueError(f"unknown route {route!r}")
    v = S @ number_state(n, dim, p, guard)
    return make_state(v, p, guard, normalize=False, what=f"|r={r},n={n}>")


def apply_poly_in_creation(coeffs, scale: complex, vec: np.ndarray, p) -> np.ndarray:
    """``f(scale * a+) vec`` for ``f`` with ascending ``coeffs``, by Horner's rule."""
    ops = build_operators(vec.shape[0], p)
    out = np.zeros_like(vec, dtype=complex)
    for c in reversed(list(coeffs)):
        out = scale * (ops.ad @ out) + complex(c) * vec
    return out


def _squeezed_vacuum_seed(t: float, dim: int, p: float) -> np.ndarray:
    # exp(-t (a+)^2 / 2)|0> = sum_k (-t/2)^k sqrt([2k]!) / k! |2k>
    v = np.zeros(dim, dtype=complex)
    amp = 1.0
    for k in range(0, (dim + 1) // 2):
        if k:
            amp *= (-t / 2) / k * math.sqrt(_bracket(2 * k, p) * _bracket(2 * k - 1, p))
        v[2 * k] = amp
    return v


def squeezed_number_state_closed(r: float, n: int, dim: int = DEFAULT_DIM, p=1,
                                 guard: int = DEFAULT_GUARD) -> FockState:
    """Closed form of ``|r,n>``: a deformed Hermite polynomial in ``a+ / (i sqrt(sinh 2r))``.

    ``(sech r)^(p/2) / sqrt([n]!) (-tanh(r)/2)^(n/2) H_n(chi) exp(-tanh(r) (a+)^2/2) |0>``.
    The square roots use principal branches, so ``r`` must be positive.
    """
    if r <= 0:
        raise ValueError("closed form needs r > 0")
    if not 0 <= n < dim:
        raise ValueError("need 0 <= n < dim")
    pf = _pfloat(p)
    h = hermite_explicit(n, p)
    fact = float(np.prod(_bracket(np.arange(1, n + 1), pf))) if n else 1.0
    seed = _squeezed_vacuum_seed(math.tanh(r), dim, pf)
    scale = 1.0 / (1j * math.sqrt(math.sinh(2 * r)))
    v = apply_poly_in_creation(h.poly.to_floats(), scale, seed, pf)
    pref = math.cosh(r) ** (-pf / 2) / math.sqrt(fact) * complex(-math.tanh(r) / 2) ** (n / 2)
    return make_state(pref * v, pf, guard, normalize=False, what=f"closed |r={r},n={n}>")


def route_overlaps(r: float, n: int, dim: int = DEFAULT_DIM, p=1, guard: int = DEFAULT_GUARD) -> dict:
    """Pairwise overlap moduli and relative phases among the three constructions of ``|r,n>``."""
    states = {
        "direct": squeezed_number_state(r, n, dim, p, guard, "direct"),
        "disentangled": squeezed_number_state(r, n, dim, p, guard, "disentangled"),
        "closed": squeezed_number_state_closed(r, n, dim, p, guard),
    }
    out = {}
    names = list(states)
    for i, u in enumerate(names):
        for w in names[i + 1:]:
            ov = states[u].overlap(states[w])
            out[f"{u}|{w}"] = {"modulus": abs(ov), "phase": math.atan2(ov.imag, ov.real)}
    out["leakage"] = max(s.leakage for s in states.values())
    return out


def expect(op: np.ndarray, vec: np.ndarray) -> complex:
    return complex(np.vdot(vec, op @ vec))


def variance(op: np.ndarray, vec: np.ndarray) -> float:
    """``<A^2> - <A>^2`` for Hermitian ``A``, with ``<A^2> = ||A psi||^2``."""
    av = op @ vec
    mean = np.vdot(vec, av)
    return float(np.vdot(av, av).real - abs(mean) ** 2)


def _require_trusted(state: FockState, strict: bool) -> None:
    if strict and not state.trusted:
        raise TruncationError(f"state leakage {state.leakage:.3e} exceeds {state.threshold:.1e}")


def variances_xP(state: FockState, strict: bool = True) -> tuple[float, float]:
    """``(var x, var P)`` with ``x = (a + a+)/sqrt 2`` and ``P = (a - a+)/(i sqrt 2)``."""
    _require_trusted(state, strict)
    ops = build_operators(state.dim, state.p)
    v = state.amplitudes
    return variance(ops.x, v), variance(ops.P, v)


def trusted_columns(r: float, dim: int, p, guard: int = DEFAULT_GUARD,
                    threshold: float = LEAKAGE_THRESHOLD) -> int:
    """Number of leading basis columns whose images under ``S(r)`` and ``S(-r)`` stay out of the guard."""
    Sp = squeeze_operator(complex(r), dim, p).matrix
    Sm = squeeze_operator(complex(-r), dim, p).matrix
    top = slice(dim - guard, dim)
    leak = np.maximum(np.sum(np.abs(Sp[top]) ** 2, axis=0), np.sum(np.abs(Sm[top]) ** 2, axis=0))
    ok = 0
    while ok < dim - guard and leak[ok] < threshold:
        ok += 1
    return ok


def operator_identity_checks(r: float, dim: int = DEFAULT_DIM, p=1, guard: int = DEFAULT_GUARD,
                             column_leakage: float = 1e-20, nmax: int = 6) -> dict:
    """Residuals of the squeeze, gauge and ladder identities on the guarded block.

    * ``S a S^-1 - (cosh r a + sinh r a+)`` on rows ``< dim - guard`` and on
      the leading columns whose images under ``S(+-r)`` put less than
      ``column_leakage`` into the guard levels;
    * ``exp(t (a+)^2/2) a^k exp(-t (a+)^2/2) - (a - t a+)^k`` for ``k <= 3``
      on rows ``< dim - guard - k`` (exact there in exact arithmetic, since
      the raising factors are lower triangular), relative to the entrywise
      size of the triple product;
    * ``a H_{n-1}(chi)|0> - 2[n-1]/(i sqrt(sinh 2r)) H_{n-2}(chi)|0>`` for
      ``n <= nmax`` (finite support, no truncation involved; ``r > 0`` only).
    """
    if guard < 1:
        raise ValueError("guard must be >= 1")
    ops = build_operators(dim, p)
    pf = ops.p
    keep_rows = dim - guard
    out: dict = {}

    S = squeeze_operator(complex(r), dim, pf).matrix
    Sinv = squeeze_operator(complex(-r), dim, pf).matrix
    cols = trusted_columns(r, dim, pf, guard, column_leakage) if r else keep_rows
    bog = S @ ops.a @ Sinv - (math.cosh(r) * ops.a + math.sinh(r) * ops.ad)
    bog_d = S @ ops.ad @ Sinv - (math.cosh(r) * ops.ad + math.sinh(r) * ops.a)
    out["bogoliubov_columns"] = cols
    out["S a S^-1"] = float(np.max(np.abs(bog[:keep_rows, :cols]))) if cols else math.nan
    out["S a+ S^-1"] = float(np.max(np.abs(bog_d[:keep_rows, :cols]))) if cols else math.nan

    t = math.tanh(r)
    up = expm(t / 2 * ops.ad2)
    down = expm(-t / 2 * ops.ad2)
    shifted = ops.a - t * ops.ad
    ak = np.eye(dim, dtype=complex)
    target = np.eye(dim, dtype=complex)
    for k in range(1, 4):
        ak = ak @ ops.a
        target = target @ shifted
        res = up @ ak @ down - target
        bound = np.abs(up) @ np.abs(ak) @ np.abs(down) + np.abs(target)
        blk = slice(0, keep_rows - k)
        out[f"gauge a^{k}"] = _rel_residual(res[blk, blk], bound[blk, blk])

    if r > 0:
        scale = 1.0 / (1j * math.sqrt(math.sinh(2 * r)))
        vac = np.zeros(dim, dtype=complex)
        vac[0] = 1.0
        worst = 0.0
        for n in range(1, nmax + 1):
            hn1 = hermite_explicit(n - 1, pf).poly.to_floats()
            lhs = ops.a @ apply_poly_in_creation(hn1, scale, vac, pf)
            if n >= 2:
                hn2 = hermite_explicit(n - 2, pf).poly.to_floats()
                rhs = 2 * _bracket(n - 1, pf) * scale * apply_poly_in_creation(hn2, scale, vac, pf)
            else:
                rhs = np.zeros(dim, dtype=complex)
            worst = max(worst, float(np.max(np.abs(lhs - rhs))))
        out["a H_{n-1}(chi)|0>"] = worst
    return out

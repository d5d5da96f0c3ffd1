"""Named invariant suites producing machine-readable reports."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import defcalc, fock, hermite, minunc
from .poly import Poly, X

__all__ = ["Case", "Report", "SUITES", "run_suite", "SCHEMA_VERSION"]

SCHEMA_VERSION = "1"


@dataclass
class Case:
    name: str
    equation_tag: str
    status: str
    max_error: object  # float or "exact"


@dataclass
class Report:
    suite: str
    config: dict
    cases: list = field(default_factory=list)
    version: str = SCHEMA_VERSION

    @property
    def passed(self) -> bool:
        return all(c.status == "pass" for c in self.cases)

    def exact(self, name: str, tag: str, ok: bool, detail: float | None = None) -> None:
        err = "exact" if ok else (float(detail) if detail is not None else math.inf)
        self.cases.append(Case(name, tag, "pass" if ok else "fail", err))

    def numeric(self, name: str, tag: str, err: float, tol: float) -> None:
        err = float(err)
        ok = math.isfinite(err) and err < tol
        self.cases.append(Case(name, tag, "pass" if ok else "fail", err))

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "version": self.version,
            "config": self.config,
            "cases": [asdict(c) for c in self.cases],
            "passed": self.passed,
        }


def _poly_size(f: Poly) -> float:
    return max((abs(complex(c)) if not isinstance(c, Fraction) else abs(float(c)) for c in f.coeffs),
               default=0.0)


def _sample_polys(max_deg: int) -> list[Poly]:
    # deterministic, mixed-parity test polynomials with small rational coefficients
    out = []
    for deg in range(max_deg + 1):
        out.append(Poly([Fraction((3 * k + deg) % 7 - 3, 1 + (k + 2 * deg) % 4) for k in range(deg + 1)]
                        + [Fraction(1)]))
    return out


# --------------------------------------------------------------------------- calculus
def suite_calculus(cfg: dict) -> Report:
    rep = Report("calculus", cfg)
    ps = cfg["p"]
    nmax = cfg["nmax"]
    polys = _sample_polys(min(nmax, 10))
    for p in ps:
        ok = all(defcalc.deformed_derivative(defcalc.deformed_antiderivative(Poly.monomial(n), p), p)
                 == Poly.monomial(n) for n in range(nmax + 1))
        rep.exact(f"fundamental theorem p={p}", "Eq. 8/13", ok)

        ok = True
        for n in range(1, nmax + 1):
            d = defcalc.deformed_derivative(Poly.monomial(n), p)
            want = Poly.monomial(n - 1, n if n % 2 == 0 else n + p - 1)
            ok &= d == want
        for f in polys:
            fe = f.even_part()
            ok &= defcalc.deformed_derivative(fe, p) == fe.derivative()
        rep.exact(f"parity rule p={p}", "Eq. 5", ok)

        worst = Fraction(0)
        for f in polys:
            fe = f.even_part()
            for g in polys:
                lhs = defcalc.deformed_derivative(fe * g, p)
                rhs = defcalc.deformed_derivative(fe, p) * g + fe * defcalc.deformed_derivative(g, p)
                worst = max(worst, Fraction(_poly_size(lhs - rhs)))
        rep.exact(f"Leibnitz with even factor p={p}", "Eq. 11", worst == 0, worst)

        ok = True
        for K in range(1, nmax + 1):
            e = defcalc.deformed_exp_poly(K, p)
            ok &= defcalc.deformed_derivative(e, p) == defcalc.deformed_exp_poly(K - 1, p)
        rep.exact(f"E partial-sum shift p={p}", "Eq. 10", ok)

        ok = True
        for f in polys:
            for g in polys:
                for even_weighted in (True, False):
                    F = defcalc.GaussPoly(f.even_part() if even_weighted else f, weighted=True)
                    G = g if even_weighted else g.even_part()
                    dF = defcalc.deformed_derivative(F, p)
                    dG = defcalc.deformed_derivative(G, p)
                    total = (defcalc.integrate_gauss_poly(defcalc.GaussPoly(dF.poly * G, True), p)
                             + defcalc.integrate_gauss_poly(defcalc.GaussPoly(F.poly * dG, True), p))
                    ok &= total.value == 0
        rep.exact(f"full-line integration by parts p={p}", "Eq. 15", ok)

        ok = all(defcalc.gaussian_moment(2 * n, p).value
                 == math.prod(defcalc.deformed_number(2 * j + 1, p) for j in range(n)) / Fraction(2 ** n)
                 for n in range(nmax + 1))
        rep.exact(f"Gaussian moments p={p}", "Eq. 29", ok)

    for p in [q for q in ps if q <= 3]:
        worst, ok = 0.0, True
        for f in polys[:7]:
            for a, b in ((0, 1), (-1, 1), (1, 2)):
                res = defcalc.series_integral_oracle(f, a, b, p)
                diff = abs(res.value - float(defcalc.deformed_definite_integral(f, a, b, p)))
                worst = max(worst, diff)
                ok &= diff <= res.tolerance <= 1e-6
        rep.cases.append(Case(f"series oracle agreement p={p}", "Eq. 14", "pass" if ok else "fail", worst))
    return rep


# --------------------------------------------------------------------------- hermite
HERMITE_TABLE = {
    0: lambda b: [1],
    1: lambda b: [0, 2],
    2: lambda b: [-b(2, True), 0, 4],
    3: lambda b: [0, -4 * b(3), 0, 8],
    4: lambda b: [2 * b(3, True), 0, -16 * b(3), 0, 16],
    5: lambda b: [0, 8 * b(5) * b(3), 0, -32 * b(5), 0, 32],
    6: lambda b: [-b(5, True), 0, 48 * b(5) * b(3), 0, -96 * b(5), 0, 64],
}


def hermite_table(n: int, p) -> Poly:
    """The tabulated first seven polynomials, written in deformed numbers and factorials."""
    def b(k, fact=False):
        return defcalc.deformed_factorial(k, p) if fact else defcalc.deformed_number(k, p)
    return Poly(HERMITE_TABLE[n](b))


def suite_hermite(cfg: dict) -> Report:
    rep = Report("hermite", cfg)
    nmax = cfg["nmax"]
    for p in cfg["p"]:
        ok = all(len({f(n, p).poly for f in hermite.ROUTES.values()}) == 1 for n in range(nmax + 1))
        rep.exact(f"five-route agreement p={p}", "Eq. 18/24/25/27/42", ok)
        ok = all(hermite.hermite_parity_form(n, p).poly == hermite.hermite_explicit(n, p).poly
                 for n in range(nmax + 1))
        rep.exact(f"parity-split sums p={p}", "Eq. 20/21", ok)
        ok = all(hermite.ode_residual(n, p).is_zero() for n in range(nmax + 1))
        rep.exact(f"ODE residual p={p}", "Eq. 22", ok)
        ok = all(defcalc.deformed_derivative(hermite.hermite_explicit(n, p).poly, p)
                 == hermite.hermite_explicit(n - 1, p).poly * (2 * defcalc.deformed_number(n, p))
                 for n in range(1, nmax + 1))
        rep.exact(f"derivative recursion p={p}", "Eq. 41", ok)
        ok = True
        for n in range(1, nmax):
            h = hermite.hermite_explicit
            ok &= (h(n + 1, p).poly - h(n, p).poly.mul_x() * 2
                   + h(n - 1, p).poly * (2 * defcalc.deformed_number(n, p))).is_zero()
        rep.exact(f"three-term recursion p={p}", "Eq. 42", ok)
        ok = all(hermite.hermite_explicit(n, p).poly.reflect() == hermite.hermite_explicit(n, p).poly * (-1) ** n
                 for n in range(nmax + 1))
        rep.exact(f"parity p={p}", "text after Eq. 23", ok)
        ok = True
        for n in range(min(nmax, 12) + 1):
            for m in range(min(nmax, 12) + 1):
                want = 2 ** n * defcalc.deformed_factorial(n, p) if n == m else 0
                ok &= hermite.orthonormality_integral(n, m, p).value == want
        rep.exact(f"orthonormality matrix p={p}", "Eq. 32", ok)
        ok = all(hermite.hermite_explicit(n, p).poly == hermite_table(n, p) for n in range(min(nmax, 6) + 1))
        rep.exact(f"tabulated first seven p={p}", "Eq. 19", ok)
    herm = np.polynomial.hermite
    ok = True
    for n in range(nmax + 1):
        classical = herm.herm2poly([0] * n + [1])
        ok &= np.array_equal(np.array(hermite.hermite_explicit(n, 1).poly.to_floats()), classical)
    rep.exact("p=1 classical Hermite", "Eq. 18 at p=1", ok)
    return rep


# --------------------------------------------------------------------------- fock
def suite_fock(cfg: dict) -> Report:
    rep = Report("fock", cfg)
    dim, guard, tol = cfg["dim"], cfg["guard"], cfg["tol"]
    rs = (0.1, 0.25, 0.5)
    nmax = min(cfg["nmax"], 6)
    for p in cfg["p"]:
        ops = fock.build_operators(dim, p)
        res = fock.commutator_residuals(ops, guard)
        rep.numeric(f"R-deformed algebra p={p}", "Eq. 2",
                    max(res["[a,a+] - 1 - (p-1)R"], res["{R,a}"], res["{R,a+}"], res["R^2 - 1"]), 1e-12)
        rep.numeric(f"[a,(a+)^n] p={p}", "Eq. 53",
                    max(v for k, v in res.items() if k.startswith("[a,(a+)^")), 1e-12)
        ident = [fock.operator_identity_checks(r, dim, p, guard) for r in rs]
        rep.numeric(f"Bogoliubov transform p={p}", "Eq. 45",
                    max(max(d["S a S^-1"], d["S a+ S^-1"]) for d in ident), tol)
        rep.numeric(f"gauge identity p={p}", "Eq. 49",
                    max(d[f"gauge a^{k}"] for d in ident for k in (1, 2, 3)), tol)
        rep.numeric(f"ladder on H(chi)|0> p={p}", "Eq. 54", max(d["a H_{n-1}(chi)|0>"] for d in ident), tol)

        route_err = var_err = prod_err = floor_gap = dir_err = leak = 0.0
        floor_strict = math.inf
        for r in rs:
            for n in range(nmax + 1):
                ov = fock.route_overlaps(r, n, dim, p, guard)
                route_err = max(route_err, max(1 - v["modulus"] for k, v in ov.items() if k != "leakage"))
                leak = max(leak, ov["leakage"])
                vx, vp = fock.variances_xP(fock.squeezed_number_state(r, n, dim, p, guard))
                ref = n + p / 2
                var_err = max(var_err, abs(vx - math.exp(-2 * r) * ref), abs(vp - math.exp(2 * r) * ref))
                prod_err = max(prod_err, abs(vx * vp - ref ** 2))
                floor = (0.5 + (p - 1) * (-1) ** n / 2) ** 2
                floor_gap = max(floor_gap, floor - vx * vp)
                if n == 0:
                    floor_gap = max(floor_gap, abs(vx * vp - floor))
                else:
                    floor_strict = min(floor_strict, vx * vp - floor)
                sm = fock.squeezed_number_state(-r, n, dim, p, guard)
                vxm, vpm = fock.variances_xP(sm)
                dir_err = max(dir_err, vx - ref, ref - vp, ref - vxm, vpm - ref)
        rep.numeric(f"three-route overlap p={p}", "Eq. 43/46/48", route_err, 1e-8)
        rep.numeric(f"squeezed variances p={p}", "Eq. 57", var_err, tol)
        rep.numeric(f"variance product p={p}", "Eq. 58", prod_err, tol)
        rep.numeric(f"uncertainty floor (equality at n=0) p={p}", "Eq. 60", max(floor_gap, 0.0), tol)
        rep.exact(f"floor strict for n>0 p={p}", "Eq. 60", floor_strict > tol or nmax == 0)
        rep.numeric(f"squeezing direction p={p}", "Eq. 62/63", max(dir_err, 0.0), tol)
        rep.numeric(f"leakage p={p}", "truncation", leak, fock.LEAKAGE_THRESHOLD)

        asq_err = dir_asq = 0.0
        for r in (0.0, 0.1, 0.25, 0.5):
            s = fock.squeezed_number_state(r, 0, dim, p, guard)
            N, v1, v2 = minunc.asq_statistics(s)
            asq_err = max(asq_err, abs(v1 - p / 2 * math.cosh(2 * r) ** 2), abs(v2 - p / 2),
                          abs(N - p / 2 * math.cosh(2 * r)), abs(v1 * v2 - N * N))
            dir_asq = max(dir_asq, N - v1, v2 - N)
        rep.numeric(f"squeezed-vacuum amplitude-squared stats p={p}", "Eq. 65/66", asq_err, tol)
        rep.numeric(f"amplitude-squared direction p={p}", "Eq. 67", max(dir_asq, 0.0), tol)
    return rep


# --------------------------------------------------------------------------- minunc
def suite_minunc(cfg: dict) -> Report:
    rep = Report("minunc", cfg)
    dim, guard, tol = cfg["dim"], cfg["guard"], cfg["tol"]
    lams = (0.25, 0.5, 1.0, 2.0, 4.0)
    mmax = min(cfg["nmax"], 4)
    for p in cfg["p"]:
        eig = rel71 = closed1 = closed2 = general = 0.0
        for lam in lams:
            for m in range(mmax + 1):
                s = minunc.min_uncertainty_state(m, lam, p, dim, guard)
                N, v1, v2 = minunc.asq_statistics(s)
                eig = max(eig, minunc.eigen_residual(s, m, lam, p))
                rel71 = max(rel71, abs(v1 - lam * N), abs(v2 - N / lam), abs(v1 * v2 - N * N) / max(N * N, 1))
                if m == 1:
                    want = minunc.psi1_statistics_closed_form(lam, p)
                    closed1 = max(closed1, *(abs(u - w) for u, w in zip((N, v1, v2), want)))
                if m == 2:
                    closed2 = max(closed2, abs(N - minunc.mean_number_closed_form(2, lam, p)))
                if 1 <= m <= 2:
                    general = max(general, abs(minunc.mean_number_general(m, lam, p)
                                               - minunc.mean_number_closed_form(m, lam, p)))
        rep.numeric(f"eigenvalue residual p={p}", "Eq. 68/72", eig, tol)
        rep.numeric(f"minimum-uncertainty relations p={p}", "Eq. 71", rel71, 10 * tol)
        if mmax >= 1:
            rep.numeric(f"|psi(1,lambda)> statistics p={p}", "Eq. 84/85", closed1, tol)
        if mmax >= 2:
            rep.numeric(f"|psi(2,lambda)> mean number p={p}", "Eq. 86/87", closed2, tol)
        if mmax >= 1:
            rep.numeric(f"general mean-number formula p={p}", "Eq. 82/83", general, 1e-9)
        lim = 0.0
        for m in range(mmax + 1):
            lo = minunc.min_uncertainty_state(m, 0.05, p, guard=guard)
            hi = minunc.min_uncertainty_state(m, 20.0, p, guard=guard)
            lim = max(lim, abs(minunc.asq_statistics(lo)[1] - (m + p / 2)),
                      abs(minunc.asq_statistics(hi)[2] - (m + p / 2)))
        rep.numeric(f"lambda -> 0 / infinity limits p={p}", "limits after Eq. 87", lim, 5e-2)
    return rep


SUITES: dict[str, Callable[[dict], Report]] = {
    "calculus": suite_calculus,
    "hermite": suite_hermite,
    "fock": suite_fock,
    "minunc": suite_minunc,
}

DEFAULTS = {
    "calculus": {"p": [1, 2, 3, 5], "nmax": 20},
    "hermite": {"p": [1, 2, 3, 5], "nmax": 20},
    "fock": {"p": [1, 2, 3, 4], "nmax": 6, "dim": 128, "guard": 16, "tol": 1e-8},
    "minunc": {"p": [1, 2, 3], "nmax": 4, "dim": 256, "guard": 16, "tol": 1e-8},
}


def run_suite(name: str, **overrides) -> Report:
    """Run one suite (or ``"all"``) with defaults overridden by non-``None`` keyword arguments."""
    if name == "all":
        parts = [run_suite(n, **overrides) for n in SUITES]
        rep = Report("all", {n: r.config for n, r in zip(SUITES, parts)})
        for n, r in zip(SUITES, parts):
            for c in r.cases:
                rep.cases.append(Case(f"{n}: {c.name}", c.equation_tag, c.status, c.max_error))
        return rep
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    cfg = dict(DEFAULTS[name])
    for k, v in overrides.items():
        if v is not None and k in cfg:
            cfg[k] = v
    run_cfg = dict(cfg)
    run_cfg["p"] = [Fraction(q) for q in cfg["p"]]
    cfg["p"] = [str(q) for q in run_cfg["p"]]
    rep = SUITES[name](run_cfg)
    rep.config = cfg
    return rep

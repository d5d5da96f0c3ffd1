"""Command-line front end: exact Hermite output, verification suites and parameter sweeps.

Exit codes: 0 success, 1 verification failure, 2 usage or configuration error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import warnings
from fractions import Fraction

import numpy as np

from . import fock, hermite, minunc, verify
from .defcalc import deform_param


class ConfigError(ValueError):
    pass


def _p_list(text: str) -> list[Fraction]:
    try:
        out = [deform_param(Fraction(tok.strip())) for tok in text.split(",") if tok.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad --p value {text!r}: {exc}") from None
    if not out:
        raise ConfigError("--p needs at least one value")
    return out


def _g(x: float) -> str:
    return f"{x:.17g}"


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_hermite(args) -> int:
    ps = _p_list(args.p)
    if len(ps) != 1:
        raise ConfigError("hermite takes a single --p value")
    if args.n < 0:
        raise ConfigError("--n must be non-negative")
    poly = hermite.hermite_explicit(args.n, ps[0]).poly
    if args.format == "json":
        text = json.dumps({"coeffs": [str(c) for c in poly.coeffs]}) + "\n"
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["degree", "coefficient"])
        w.writerows([k, str(c)] for k, c in enumerate(poly.coeffs))
        text = buf.getvalue()
    else:
        text = poly.to_str() + "\n"
    _emit(text, args.out)
    return 0


def cmd_verify(args) -> int:
    overrides = {
        "p": _p_list(args.p) if args.p else None,
        "nmax": args.nmax,
        "dim": args.dim,
        "guard": args.guard,
        "tol": args.tol,
    }
    if args.nmax is not None and args.nmax < 0:
        raise ConfigError("--nmax must be non-negative")
    if args.dim is not None and args.dim < 2:
        raise ConfigError("--dim must be at least 2")
    if args.guard is not None and args.guard < 1:
        raise ConfigError("--guard must be at least 1")
    rep = verify.run_suite(args.suite, **overrides)
    text = json.dumps(rep.to_dict(), indent=2) + "\n"
    _emit(text, args.out)
    if args.out:
        for c in rep.cases:
            print(f"{c.status.upper():4}  {c.equation_tag:<22} {c.name}  ({c.max_error})", file=sys.stderr)
    return 0 if rep.passed else 1


def _linspace(lo: float, hi: float, steps: int) -> np.ndarray:
    if steps < 1:
        raise ConfigError("--steps must be positive")
    if hi < lo:
        raise ConfigError("range maximum is below its minimum")
    return np.linspace(lo, hi, steps) if steps > 1 else np.array([lo])


def cmd_squeeze_sweep(args) -> int:
    ps = _p_list(args.p)
    if len(ps) != 1:
        raise ConfigError("squeeze-sweep takes a single --p value")
    p = ps[0]
    dim = args.dim or fock.DEFAULT_DIM
    if not 0 <= args.n < dim:
        raise ConfigError("need 0 <= n < dim")
    rmax = fock.r_max_for(dim)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["r", "var_x", "var_P", "var_x_analytic", "var_P_analytic", "product", "leakage", "trusted"])
    ref = args.n + float(p) / 2
    for r in _linspace(args.r_min, args.r_max, args.steps):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", fock.TruncationWarning)
            s = fock.squeezed_number_state(float(r), args.n, dim, p, args.guard, r_max=math.inf)
        vx, vp = fock.variances_xP(s, strict=False)
        trusted = s.trusted and abs(r) <= rmax
        w.writerow([_g(r), _g(vx), _g(vp), _g(math.exp(-2 * r) * ref), _g(math.exp(2 * r) * ref),
                    _g(vx * vp), _g(s.leakage), str(trusted).lower()])
    _emit(buf.getvalue(), args.out)
    return 0


def _minunc_analytic(m: int, lam: float, p) -> tuple[str, str]:
    if m > 2:
        return "", ""
    n = minunc.mean_number_closed_form(m, lam, p)
    return _g(lam * n), _g(n / lam)


def cmd_minunc_sweep(args) -> int:
    ps = _p_list(args.p)
    if len(ps) != 1:
        raise ConfigError("minunc-sweep takes a single --p value")
    p = ps[0]
    if args.m < 0:
        raise ConfigError("--m must be non-negative")
    if args.lambda_min <= 0:
        raise ConfigError("--lambda-min must be positive")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["lambda", "N_avg", "varY1", "varY2", "varY1_analytic", "varY2_analytic",
                "eigen_residual", "leakage", "dim", "trusted"])
    for lam in _linspace(args.lambda_min, args.lambda_max, args.steps):
        lam = float(lam)
        dim = args.dim or max(minunc.required_dim(lam), 2 * (args.m + args.guard))
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", fock.TruncationWarning)
            s = minunc.min_uncertainty_state(args.m, lam, p, dim, args.guard, check_dim=False)
        N, v1, v2 = minunc.asq_statistics(s, strict=False)
        res = minunc.eigen_residual(s, args.m, lam, p, strict=False)
        a1, a2 = _minunc_analytic(args.m, lam, p)
        trusted = s.trusted and dim >= minunc.required_dim(lam)
        w.writerow([_g(lam), _g(N), _g(v1), _g(v2), a1, a2, _g(res), _g(s.leakage), dim,
                    str(trusted).lower()])
    _emit(buf.getvalue(), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="paraherm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    h = sub.add_parser("hermite", help="print H_n^(p) with exact coefficients")
    h.add_argument("--n", type=int, required=True)
    h.add_argument("--p", default="1")
    h.add_argument("--format", choices=("text", "json", "csv"), default="text")
    h.add_argument("--out")
    h.set_defaults(func=cmd_hermite)

    v = sub.add_parser("verify", help="run an invariant suite and write a JSON report")
    v.add_argument("--suite", choices=(*verify.SUITES, "all"), default="all")
    v.add_argument("--p", help="comma-separated deformation orders (suite default if omitted)")
    v.add_argument("--nmax", type=int)
    v.add_argument("--dim", type=int)
    v.add_argument("--guard", type=int)
    v.add_argument("--tol", type=float)
    v.add_argument("--format", choices=("json",), default="json")
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("squeeze-sweep", help="variances of |r,n> over a range of r (CSV)")
    s.add_argument("--n", type=int, default=0)
    s.add_argument("--p", default="1")
    s.add_argument("--r-min", type=float, default=0.0)
    s.add_argument("--r-max", type=float, default=1.0)
    s.add_argument("--steps", type=int, default=11)
    s.add_argument("--dim", type=int, default=fock.DEFAULT_DIM)
    s.add_argument("--guard", type=int, default=fock.DEFAULT_GUARD)
    s.add_argument("--format", choices=("csv",), default="csv")
    s.add_argument("--out")
    s.set_defaults(func=cmd_squeeze_sweep)

    m = sub.add_parser("minunc-sweep", help="statistics of |psi(m,lambda)> over a range of lambda (CSV)")
    m.add_argument("--m", type=int, default=1)
    m.add_argument("--p", default="1")
    m.add_argument("--lambda-min", type=float, default=0.25)
    m.add_argument("--lambda-max", type=float, default=4.0)
    m.add_argument("--steps", type=int, default=9)
    m.add_argument("--dim", type=int, help="cutoff; scaled with lambda when omitted")
    m.add_argument("--guard", type=int, default=fock.DEFAULT_GUARD)
    m.add_argument("--format", choices=("csv",), default="csv")
    m.add_argument("--out")
    m.set_defaults(func=cmd_minunc_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, fock.TruncationError) as exc:
        print(f"paraherm: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

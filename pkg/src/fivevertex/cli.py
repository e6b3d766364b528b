"""Command-line surface: exact finite-size computations, asymptotic
scans, equilibrium-measure tables, and the verification suites.

Output is CSV (a ``#``-prefixed metadata block, one header row, then
data rows) or JSON mirroring the same fields.  Doubles are printed with
17 significant digits and rationals as "p/q", so identical configuration
yields byte-identical output.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction

import numpy as np

from . import equilibrium as eq
from .asymptotics import (
    ScaledGeometry,
    classify,
    critical_values,
    loggas_free_energy,
    polynomial_growth,
    vertex_free_energy,
)
from .errors import FiveVertexError
from .exact import (
    DEFAULT_WORK_BUDGET,
    FiniteModel,
    WeightParams,
    binomial,
    partition_function,
    partition_polynomial,
    tau_hankel,
    tau_loggas,
)
from .verify import SUITES, run_suites

ENV_PRECISION = "FIVEVERTEX_PRECISION_BITS"
ENV_BUDGET = "FIVEVERTEX_WORK_BUDGET"


def _fmt(v) -> str:
    """Deterministic cell formatting: 17 significant digits for doubles,
    p/q for rationals, bare text otherwise."""
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        if not math.isfinite(v):
            raise FiveVertexError(f"non-finite value {v} reached the output layer")
        return f"{v:.17g}"
    return str(v)


def _jsonable(v):
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    return v


def _write_table(args, meta: dict, header: list[str], rows: list[list]) -> None:
    if args.format == "json":
        payload = {
            "meta": {k: _jsonable(v) for k, v in meta.items()},
            "rows": [
                {h: _jsonable(v) for h, v in zip(header, row)} for row in rows
            ],
        }
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        lines = [f"# {k} = {_fmt(v)}" for k, v in meta.items()]
        lines.append(",".join(header))
        lines.extend(",".join(_fmt(v) for v in row) for row in rows)
        text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _geometry(args) -> ScaledGeometry:
    return ScaledGeometry(args.lam, args.mu)


def _x_grid(args) -> np.ndarray:
    if args.x_count < 1:
        raise FiveVertexError("grid count must be >= 1")
    if args.x_count > 1 and not args.x_start < args.x_stop:
        raise FiveVertexError("grid needs start < stop")
    if args.x_scale == "log":
        if args.x_start <= 0:
            raise FiveVertexError("log grid needs positive start")
        return np.geomspace(args.x_start, args.x_stop, args.x_count)
    return np.linspace(args.x_start, args.x_stop, args.x_count)


def cmd_exact(args) -> int:
    model = FiniteModel(N=args.N, M=args.M, L=args.L)
    x = Fraction(args.x)
    if x <= 0:
        raise FiveVertexError("x must be positive")
    poly = partition_polynomial(model)
    th = tau_hankel(model, x)
    tl = tau_loggas(model, x, budget=args.budget)
    meta = {
        "command": "exact",
        "N": model.N,
        "M": model.M,
        "L": model.L,
        "x": x,
        "degree": poly.degree,
        "tau_hankel": th,
        "tau_loggas": tl,
        "tau_equal": th == tl,
        "P_at_x": poly(1 / x),
    }
    if args.delta is not None and args.alpha is not None:
        w = WeightParams(x=float(x), delta=args.delta, alpha=args.alpha)
        meta["Z"] = partition_function(model, w)
    rows = [[k, c] for k, c in enumerate(poly.coefficients)]
    _write_table(args, meta, ["k", "coefficient"], rows)
    return 0


def cmd_scan(args) -> int:
    geom = _geometry(args)
    cv = critical_values(geom)
    meta = {
        "command": "scan",
        "lam": geom.lam,
        "mu": geom.mu,
        "x_c": cv.x_c,
    }
    for name in ("x_c_tilde", "x1", "x2"):
        v = getattr(cv, name)
        if v is not None:
            meta[name] = v
    with_f = args.delta is not None and args.alpha is not None
    header = ["x", "scenario", "regime", "a", "b", "E", "phi", "f2"]
    if with_f:
        header.append("F")
    header += ["norm_residual", "endpoint_residual", "on_boundary"]
    rows = []
    for x in _x_grid(args):
        x = float(x)
        report = classify(geom, x)
        support = eq.band_endpoints(geom, x)
        r1, r2 = eq.endpoint_residuals(support)
        row = [
            x,
            report.scenario,
            report.regime,
            support.a,
            support.b,
            float(eq.first_moment(support)),
            float(loggas_free_energy(geom, x)),
            float(polynomial_growth(geom, x)),
        ]
        if with_f:
            sign_ok = (x > 1) == (args.delta > 0) and x != 1
            if sign_ok:
                w = WeightParams(x=x, delta=args.delta, alpha=args.alpha)
                row.append(vertex_free_energy(geom, w))
            else:
                row.append("")
        row += [
            abs(eq.density_normalization(support) - 1.0),
            max(abs(r1), abs(r2)),
            report.on_boundary,
        ]
        rows.append(row)
    _write_table(args, meta, header, rows)
    return 0


def cmd_measure(args) -> int:
    geom = _geometry(args)
    report = classify(geom, args.x)
    if report.on_boundary and args.boundary_side is None:
        sys.stderr.write(
            f"error: x = {args.x} sits on the critical value {report.boundary}; "
            "pass --boundary-side upper|lower to pick a branch\n"
        )
        return 2
    x = args.x
    if report.on_boundary:
        # nudge well clear of the classifier's boundary window
        shift = 1e-9 * max(1.0, abs(x))
        x = x + shift if args.boundary_side == "upper" else x - shift
    support = eq.band_endpoints(geom, x)
    rho = eq.density(support)
    cv = report.critical
    meta = {
        "command": "measure",
        "lam": geom.lam,
        "mu": geom.mu,
        "x": args.x,
        "scenario": support.scenario,
        "regime": report.regime,
        "a": support.a,
        "b": support.b,
        "E": float(eq.first_moment(support)),
        "x_c": cv.x_c,
    }
    gamma = support.gamma
    header = ["z", "rho"]
    rows = []
    for i in range(args.grid_points):
        z = gamma * i / (args.grid_points - 1) if args.grid_points > 1 else 0.0
        rows.append([z, rho(z)])
    if args.contour_points:
        w = eq.resolvent(support)
        center = (support.a + support.b) / 2
        radius = args.contour_radius or (gamma + 1.0)
        header += ["contour_re", "contour_im", "W_re", "W_im"]
        for i, row in enumerate(rows):
            row += [""] * 4
        for k in range(args.contour_points):
            theta = 2 * math.pi * k / args.contour_points
            z = complex(center + radius * math.cos(theta), radius * math.sin(theta))
            wz = w(z)
            rows.append(["", "", z.real, z.imag, wz.real, wz.imag])
    _write_table(args, meta, header, rows)
    return 0


def cmd_verify(args) -> int:
    names = args.suite or None
    if names:
        unknown = [n for n in names if n not in SUITES]
        if unknown:
            sys.stderr.write(
                f"error: unknown suite(s) {', '.join(unknown)}; "
                f"known suites: {', '.join(sorted(SUITES))}\n"
            )
            return 2
    overrides = {}
    if args.max_n is not None:
        overrides["max_n"] = args.max_n
    if args.budget is not None:
        overrides["budget"] = args.budget
    reports = run_suites(names, **overrides)
    payload = {
        "all_passed": all(r.passed for r in reports),
        "suites": [r.to_dict() for r in reports],
    }
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for r in reports:
        status = "pass" if r.passed else "FAIL"
        sys.stderr.write(f"suite {r.suite}: {status} ({r.n_pass}/{len(r.cases)})\n")
    return 0 if payload["all_passed"] else 1


def _apply_config_defaults(parser: argparse.ArgumentParser, argv: list[str]) -> list[str]:
    """Seed parser defaults from a JSON config file; flags still win."""
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if known.config:
        with open(known.config) as fh:
            cfg = json.load(fh)
        if not isinstance(cfg, dict):
            parser.error("config file must hold a JSON object")
        parser.set_defaults(**{k.replace("-", "_"): v for k, v in cfg.items()})
    return argv


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fivevertex",
        description="Five-vertex model: exact partition functions, "
        "log-gas equilibrium measures, free-energy asymptotics.",
    )
    parser.add_argument("--config", help="JSON file with flag defaults (flags win)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("-o", "--output", help="output path (default stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument(
            "--precision",
            type=int,
            default=int(os.environ.get(ENV_PRECISION, "256")),
            help="working precision in bits for high-precision paths",
        )
        p.add_argument(
            "--budget",
            type=int,
            default=int(os.environ.get(ENV_BUDGET, str(DEFAULT_WORK_BUDGET))),
            help="work budget for combinatorial sums",
        )

    def add_geometry(p):
        p.add_argument("--lam", type=float, required=True, help="aspect ratio L/N")
        p.add_argument("--mu", type=float, required=True, help="aspect ratio M/N")

    p = sub.add_parser("exact", help="exact finite-size quantities")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--L", type=int, required=True)
    p.add_argument("--x", required=True, help="weight parameter, exact (e.g. 2, 1/3, 0.25)")
    p.add_argument("--delta", type=float, help="crossing parameter (with --alpha, adds Z)")
    p.add_argument("--alpha", type=float, help="field parameter (with --delta, adds Z)")
    add_common(p)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("scan", help="scenario/free-energy scan over an x grid")
    add_geometry(p)
    p.add_argument("--x-start", type=float, required=True)
    p.add_argument("--x-stop", type=float, required=True)
    p.add_argument("--x-count", type=int, default=50)
    p.add_argument("--x-scale", choices=("lin", "log"), default="log")
    p.add_argument("--delta", type=float)
    p.add_argument("--alpha", type=float)
    add_common(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("measure", help="equilibrium density (and resolvent) at one x")
    add_geometry(p)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--grid-points", type=int, default=1001)
    p.add_argument("--contour-points", type=int, default=0,
                   help="if > 0, also tabulate W on a circle about the band")
    p.add_argument("--contour-radius", type=float)
    p.add_argument("--boundary-side", choices=("upper", "lower"),
                   help="branch to use when x sits on a critical value")
    add_common(p)
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", action="append", help="suite name (repeatable; default all)")
    p.add_argument("--max-n", type=int, help="cap N in the exact sweeps")
    add_common(p)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        _apply_config_defaults(parser, argv)
        args = parser.parse_args(argv)
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    try:
        return args.func(args)
    except FiveVertexError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())

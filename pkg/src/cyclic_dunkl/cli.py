"""Command-line front end.

Subcommands::

    verify      run identity suites, one JSON report per line
    eval        tabulate cos_m, sin_{m,l}, the hyper-Bessel function or the kernel
    series      dump Taylor coefficients as JSON
    crosscheck  Erdelyi-Kober quadrature against the diagonal transform

Exit codes: 0 success, 1 an identity failed, 2 usage or parameter error.

Report schema (``schema_version`` 1), one object per line::

    {"schema_version", "identity", "m", "nu", "truncation", "max_residual",
     "tolerance", "pass", "status", "details"}

Series schema::

    {"object", "m", "nu", "mu", "truncation", "coefficients": [[re, im], ...]}
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from .errors import DunklError, ParameterError
from .operators import OperatorContext, eigen_series, intertwiner_apply
from .quadrature import QuadratureConfig
from .series import MultiIndex, TruncatedSeries
from .special import cos_m_eval, dunkl_kernel_eval, hyper_bessel_eval, hyper_bessel_series, sin_ml_eval
from .suites import SUITES, RunConfig, run_suite, suite_rl_crosscheck

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

REPORT_FIELDS = ["identity", "m", "nu", "truncation", "max_residual", "tolerance", "pass", "status"]
TABLE_FIELDS = ["x_re", "x_im", "value_re", "value_im", "error_estimate", "terms_used"]
KERNEL_FIELDS = ["closed_re", "closed_im", "difference", "literal_difference"]


class UsageError(Exception):
    pass


def parse_complex(text: str) -> complex:
    """Parse ``re+imi`` style input: ``2``, ``-1.5``, ``0.7+0.2i``, ``3i``, ``i``."""
    t = text.strip().replace(" ", "")
    if not t:
        raise UsageError("empty number")
    if t.endswith(("i", "j")):
        body = t[:-1]
        if body in ("", "+", "-"):
            body += "1"
        elif body[-1] in "+-":
            body += "1"
        t = body + "j"
    try:
        return complex(t)
    except ValueError:
        raise UsageError(f"cannot parse {text!r} as a number") from None


def parse_nu(text: str | None, m: int) -> tuple:
    if text is None:
        return (0.0,) * (m - 1)
    try:
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise UsageError(f"--nu must be comma-separated reals, got {text!r}") from None


def parse_grid(text: str) -> list[complex]:
    """``start:stop:step``, stop included when the progression lands on it."""
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"--grid must be start:stop:step, got {text!r}")
    start, stop, step = (parse_complex(p) for p in parts)
    span = abs(stop - start)
    if span == 0:
        return [start]
    if step == 0:
        raise UsageError("--grid step must be nonzero")
    count = int(math.floor(span / abs(step) + 1e-9)) + 1
    if count > 1_000_000:
        raise UsageError(f"--grid has {count} points; limit is 1e6")
    return [start + i * step for i in range(count)]


def _json_default(obj):
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(obj, default=_json_default, allow_nan=False)


def _common(p: argparse.ArgumentParser, truncation_default=60):
    p.add_argument("--m", type=int, required=True, help="group order m >= 2")
    p.add_argument("--nu", default=None, help="comma-separated nu_1..nu_{m-1} (default all 0)")
    p.add_argument("--lambda", dest="lam", default="1", help="spectral parameter, e.g. 1.5 or 0.3+1i")
    p.add_argument("--mu-direct", action="store_true", help="use --lambda as the eigenvalue mu itself")
    p.add_argument("--truncation", type=int, default=truncation_default)
    p.add_argument("--tolerance", type=float, default=None, help="override every identity tolerance")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--allow-invalid", action="store_true", help="run even if nu violates nu_k >= -1 + k/m")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cyclic-dunkl", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run identity suites")
    _common(v)
    v.add_argument("--suite", choices=SUITES, default="all")
    v.add_argument("--output", choices=("json", "csv"), default="json")

    e = sub.add_parser("eval", help="evaluate a function on a grid")
    _common(e)
    e.add_argument("function", choices=("cosm", "sinml", "hyperbessel", "kernel"))
    e.add_argument("--grid", required=True, help="start:stop:step (real or complex)")
    e.add_argument("--l", type=int, default=1, help="index l of sin_{m,l}")
    e.add_argument("--reading", choices=("corrected", "literal"), default="corrected")
    e.add_argument("--output", choices=("json", "csv"), default="csv")

    s = sub.add_parser("series", help="dump Taylor coefficients")
    _common(s)
    s.add_argument("object", choices=("eigen", "intertwined-exp", "hyperbessel"))

    c = sub.add_parser("crosscheck", help="quadrature transform against the diagonal action")
    _common(c)
    c.add_argument("--nodes", type=int, default=40)
    c.add_argument("--scheme", choices=("gauss-jacobi", "adaptive"), default="gauss-jacobi")
    c.add_argument("--output", choices=("json", "csv"), default="json")
    return parser


def make_config(args) -> RunConfig:
    nu = parse_nu(args.nu, args.m)
    cfg = RunConfig(
        m=args.m,
        nu=nu,
        lam=parse_complex(args.lam),
        truncation=args.truncation,
        tolerance=args.tolerance,
        seed=args.seed,
        output_format=getattr(args, "output", "json"),
        mu_direct=args.mu_direct,
    )
    if not args.allow_invalid:
        problems = MultiIndex(nu).violations()
        ctx = cfg.ctx
        if problems:
            if not ctx.kernel_condition:
                negative = [f"k_{j}={w:g}" for j, w in enumerate(ctx.k.weights, start=1) if w < 0]
                problems.append("kernel weight condition k_j >= 0 fails: " + ", ".join(negative))
            raise ParameterError("; ".join(problems))
    return cfg


def _emit_reports(reports, fmt, out):
    if fmt == "json":
        for r in reports:
            out.write(dumps(r.to_json_obj()) + "\n")
        return
    w = csv.writer(out, lineterminator="\n")
    w.writerow(REPORT_FIELDS)
    for r in reports:
        obj = r.to_json_obj()
        w.writerow([";".join(map(repr, obj["nu"])) if k == "nu" else obj[k] for k in REPORT_FIELDS])


def cmd_verify(args, out) -> int:
    cfg = make_config(args)
    reports = run_suite(args.suite, cfg)
    _emit_reports(reports, cfg.output_format, out)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def _eval_row(args, cfg, x):
    row = {"x_re": x.real, "x_im": x.imag}
    fn = args.function
    if fn == "cosm":
        r = cos_m_eval(cfg.m, x)
    elif fn == "sinml":
        r = sin_ml_eval(cfg.m, args.l, x)
    elif fn == "hyperbessel":
        r = hyper_bessel_eval(MultiIndex(cfg.nu), cfg.m, x)
    else:
        r = dunkl_kernel_eval(cfg.ctx, cfg.lam, x, reading=args.reading, mu_direct=cfg.mu_direct)
    row.update(value_re=r.value.real, value_im=r.value.imag,
               error_estimate=r.error_estimate, terms_used=r.terms_used)
    if fn == "kernel":
        cf = r.info["closed_form"]
        row.update(closed_re=cf.real, closed_im=cf.imag, difference=r.info["difference"],
                   literal_difference=r.info["literal_difference"])
    return row


def cmd_eval(args, out) -> int:
    cfg = make_config(args)
    points = parse_grid(args.grid)
    fields = TABLE_FIELDS + (KERNEL_FIELDS if args.function == "kernel" else []) + ["error"]
    rows = []
    for x in points:
        try:
            row = _eval_row(args, cfg, x)
            row["error"] = ""
        except (DunklError, ArithmeticError, ValueError) as exc:
            row = {"x_re": x.real, "x_im": x.imag, "error": f"{type(exc).__name__}: {exc}"}
        rows.append(row)
    if cfg.output_format == "json":
        out.write(dumps({"function": args.function, "m": cfg.m, "nu": list(cfg.nu), "rows": rows}) + "\n")
    else:
        w = csv.DictWriter(out, fieldnames=fields, lineterminator="\n", restval="")
        w.writeheader()
        for row in rows:
            w.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in row.items()})
    return EXIT_OK


def cmd_series(args, out) -> int:
    cfg = make_config(args)
    ctx, N, mu = cfg.ctx, cfg.truncation, cfg.mu
    if args.object == "eigen":
        s = eigen_series(ctx, mu, N)
    elif args.object == "intertwined-exp":
        s = intertwiner_apply(TruncatedSeries.exp(N, mu), ctx)
    else:
        s = hyper_bessel_series(MultiIndex(cfg.nu), cfg.m, mu / ctx.cfg.kappa, N)
    obj = {"object": args.object, "m": cfg.m, "nu": list(cfg.nu), "mu": mu}
    obj.update(s.to_json_obj())
    out.write(dumps(obj) + "\n")
    return EXIT_OK


def cmd_crosscheck(args, out) -> int:
    cfg = make_config(args)
    q = QuadratureConfig(node_count=args.nodes, scheme=args.scheme)
    reports = suite_rl_crosscheck(cfg, q)
    _emit_reports(reports, cfg.output_format, out)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


COMMANDS = {"verify": cmd_verify, "eval": cmd_eval, "series": cmd_series, "crosscheck": cmd_crosscheck}


def _error(out, kind, exc):
    payload = {"error": kind, "type": type(exc).__name__, "message": str(exc)}
    for attr in ("n", "weight"):
        if hasattr(exc, attr):
            payload[attr] = getattr(exc, attr)
    out.write(dumps(payload) + "\n")


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        _error(out, "usage", exc)
    except (ParameterError, DunklError) as exc:
        _error(out, "parameter", exc)
    return EXIT_USAGE


def run(argv) -> tuple[int, str]:
    """Run the CLI in-process and capture standard output."""
    buf = io.StringIO()
    code = main(argv, buf)
    return code, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())

"""Command-line driver.

Exit codes: 0 all checks pass, 1 identity mismatch, 2 invalid or inadmissible
input, 3 breakdown (zero constant term during extraction).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .arith import ParamPoint, parse_rational
from .cfrac import closed_coeffs, convergent, extract_coeffs, z_over
from .errors import (
    Breakdown,
    InadmissiblePoint,
    InsufficientOrder,
    OrderExceeded,
    SamplingExhausted,
    WrongSpecialization,
    ZeroConstantTerm,
)
from .qseries import build_G, build_s0_s1
from .verify import (
    GeneralizedSpec,
    check_specializations,
    explore_generalized,
    numeric_convergence_study,
    run_verify,
    summarize,
)

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_BREAKDOWN = 0, 1, 2, 3
COMMANDS = ("coeffs", "expand", "convergents", "verify", "special", "explore", "study")


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _default_seed() -> int:
    env = os.environ.get("QFRAC_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise SystemExit(f"QFRAC_SEED must be an integer, got {env!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qfrac",
        description="Exact C-fraction expansion of z/G(z), G(z) = sum (y;q)_n z^n / (x;q)_n.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-M", "--depth", dest="M", type=int, default=None,
                        help="number of partial denominators a_1..a_M")
    common.add_argument("-N", "--order", dest="N", type=int, default=None,
                        help="truncation order of the power series (N >= M)")
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--out", default=None, help="write output here instead of stdout")

    point = argparse.ArgumentParser(add_help=False)
    point.add_argument("--q", type=_rational, required=True, help="exact rational, e.g. 1/2")
    point.add_argument("--x", type=_rational, required=True)
    point.add_argument("--y", type=_rational, required=True)

    sampled = argparse.ArgumentParser(add_help=False)
    sampled.add_argument("--seed", type=int, default=None, help="defaults to $QFRAC_SEED or 0")
    sampled.add_argument("--points", type=int, default=None)
    sampled.add_argument("--jobs", type=int, default=None,
                         help="worker processes (default: CPU count)")

    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("coeffs", parents=[common, point], help="a_1..a_M, extracted and closed form")
    p.add_argument("--source", choices=("both", "closed", "extracted"), default="both")
    sub.add_parser("expand", parents=[common, point], help="coefficients of G and z/G")
    sub.add_parser("convergents", parents=[common, point], help="convergents C_1..C_M as series")
    p = sub.add_parser("verify", parents=[common, sampled], help="randomised check of the theorem and recursion")
    p.add_argument("-K", type=int, default=None, help="recursion levels (default (M-2)//2)")
    sub.add_parser("special", parents=[common, sampled], help="check the x=0 and y=0 specialisations")
    p = sub.add_parser("explore", parents=[common, point], help="extract a_i with extra Pochhammer factors")
    p.add_argument("--u", type=_rational, action="append", default=[],
                   help="extra numerator parameter (repeatable)")
    p.add_argument("--v", type=_rational, action="append", default=[],
                   help="extra denominator parameter (repeatable)")
    p = sub.add_parser("study", parents=[common, point], help="numeric convergence of C_m at a rational z")
    p.add_argument("--z", type=_rational, required=True)
    p.add_argument("--terms", type=int, default=None, help="length of the reference partial sum")
    return parser


_DEFAULTS = {
    "coeffs": (6, None, None),
    "expand": (6, None, None),
    "convergents": (6, None, None),
    "verify": (20, 24, 100),
    "special": (20, 24, 20),
    "explore": (8, None, None),
    "study": (10, None, None),
}


def _resolve(args) -> None:
    M, N, points = _DEFAULTS[args.command]
    args.M = M if args.M is None else args.M
    args.N = max(args.M, N or 0) if args.N is None else args.N
    if args.M < 1:
        raise UsageError("-M must be at least 1")
    if args.N < args.M:
        raise UsageError(f"-N ({args.N}) must be at least -M ({args.M})")
    if hasattr(args, "points"):
        args.points = points if args.points is None else args.points
        args.seed = _default_seed() if args.seed is None else args.seed
        if args.points < 1:
            raise UsageError("--points must be at least 1")


def _s(v) -> str:
    return str(v)


def _point(args) -> ParamPoint:
    return ParamPoint(args.q, args.x, args.y)


def _params(args) -> dict:
    out = {}
    for key, value in sorted(vars(args).items()):
        if key in ("command", "format", "out", "jobs"):
            continue
        if isinstance(value, list):
            value = [str(v) for v in value]
        elif isinstance(value, Fraction):
            value = str(value)
        out[key] = value
    return out


def cmd_coeffs(args):
    point = _point(args)
    rows, failures = [], []
    closed = closed_coeffs(point, args.M) if args.source != "extracted" else None
    extracted = None
    if args.source != "closed":
        s0, s1 = build_s0_s1(point, args.N)
        extracted = extract_coeffs(s0, s1, args.M, point=point)
    for i in range(1, args.M + 1):
        row = {"i": i}
        if closed is not None:
            row["closed"] = _s(closed[i])
        if extracted is not None:
            row["extracted"] = _s(extracted[i])
        if closed is not None and extracted is not None and closed[i] != extracted[i]:
            failures.append({"check": "theorem_a", "index": i, "lhs": row["extracted"], "rhs": row["closed"]})
        rows.append(row)
    return rows, failures, {}


def cmd_expand(args):
    point = _point(args)
    G = build_G(point, args.N)
    zG = z_over(G)
    rows = [{"n": n, "G": _s(G[n]), "z_over_G": _s(zG[n])} for n in range(args.N + 1)]
    return rows, [], {}


def cmd_convergents(args):
    point = _point(args)
    coeffs = closed_coeffs(point, args.M)
    rows = []
    for m in range(1, args.M + 1):
        c = convergent(coeffs, m, args.N)
        rows.append({"m": m, "a_m": _s(coeffs[m]), "series": [_s(v) for v in c.coeffs]})
    return rows, [], {}


def _failure_rows(reports) -> list:
    out = []
    for r in reports:
        for c in r.failures:
            out.append({"case": r.case, "seed": r.seed, "point": r.point.as_dict(), **c.as_dict()})
    return out


def cmd_verify(args):
    reports = run_verify(args.seed, args.points, args.M, args.N, args.K, args.jobs)
    rows = [r.as_dict() for r in reports]
    return rows, _failure_rows(reports), {"summary": summarize(reports)}


def cmd_special(args):
    reports = check_specializations(args.M, args.N, args.seed, args.points)
    rows = [r.as_dict() for r in reports]
    deviations = [
        {"case": r.case, "seed": r.seed, "point": r.point.as_dict(), **d}
        for r in reports
        for d in r.deviations
    ]
    extra = {"summary": summarize(reports), "deviations": deviations}
    if deviations:
        extra["note"] = (
            "printed y=0 specialisation differs from extraction by (-1)^(k-1) at indices 2k, 2k+1"
        )
    return rows, _failure_rows(reports), extra


def cmd_explore(args):
    spec = GeneralizedSpec(_point(args), tuple(args.u), tuple(args.v))
    rows = []
    for row in explore_generalized(spec, args.M):
        rows.append({k: (_s(v) if isinstance(v, Fraction) else v) for k, v in row.items()})
    return rows, [], {}


def cmd_study(args):
    table = numeric_convergence_study(_point(args), args.z, args.M, args.terms)
    rows = []
    for row in table:
        rows.append({
            "m": row["m"],
            "convergent": _s(row["convergent"]),
            "error": _s(row["error"]),
            "error_approx": f"{float(row['error']):.6e}",
            "taylor_error": _s(row["taylor_error"]),
            "taylor_error_approx": f"{float(row['taylor_error']):.6e}",
        })
    return rows, [], {}


HANDLERS = {
    "coeffs": cmd_coeffs,
    "expand": cmd_expand,
    "convergents": cmd_convergents,
    "verify": cmd_verify,
    "special": cmd_special,
    "explore": cmd_explore,
    "study": cmd_study,
}


def _flat(v):
    if isinstance(v, list):
        return " ".join(str(x) for x in v)
    if isinstance(v, dict):
        return " ".join(f"{k}={x}" for k, x in v.items())
    return v


def render(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2, sort_keys=False) + "\n"
    rows = doc["results"]
    if fmt == "csv":
        fields = []
        for row in rows:
            for k in row:
                if k not in fields:
                    fields.append(k)
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _flat(v) for k, v in row.items()})
        return buf.getvalue()
    lines = [f"# {doc['command']}"]
    for row in rows:
        lines.append("  ".join(f"{k}={_flat(v)}" for k, v in row.items()))
    if "summary" in doc:
        lines.append("summary: " + _flat(doc["summary"]))
    for f in doc["failures"]:
        lines.append("FAIL " + "  ".join(f"{k}={_flat(v)}" for k, v in f.items()))
    if doc.get("note"):
        lines.append("note: " + doc["note"])
    return "\n".join(lines) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _resolve(args)
        rows, failures, extra = HANDLERS[args.command](args)
    except (UsageError, InadmissiblePoint, WrongSpecialization, InsufficientOrder,
            OrderExceeded, SamplingExhausted, ValueError) as exc:
        print(f"qfrac {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (Breakdown, ZeroConstantTerm, ZeroDivisionError) as exc:
        print(f"qfrac {args.command}: breakdown: {exc}", file=sys.stderr)
        return EXIT_BREAKDOWN
    doc = {
        "command": args.command,
        "params": _params(args),
        "results": rows,
        "failures": failures,
        "seed": getattr(args, "seed", None),
        **extra,
    }
    _emit(render(doc, args.format), args.out)
    return EXIT_MISMATCH if failures else EXIT_OK


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()

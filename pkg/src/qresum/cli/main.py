"""qresum command-line entry point.

Commands:
    eval EXPR                 evaluate one call expression
    verify IDENTITY           run a named verification suite over its grid
    scan LIMIT                run a q->1 limit scan against its target

Exit codes: 0 when everything passed, 1 when an identity grid or a scan
failed its tolerance, 2 for usage, parse, or domain errors.  The
QRESUM_MAX_TERMS environment variable overrides the default term cap
when --max-terms is not given.
"""

from __future__ import annotations

import argparse
import os
import re
import sys
from typing import Optional, Sequence

from ..borel_laplace import LaplaceConfig
from ..errors import ExpressionError, QResumError
from ..limits import LimitSchedule
from ..suites import run_suite, suite_names
from .evaluate import EvalOptions, evaluate_expression, run_limit_scan
from .expr import format_complex, format_expr
from .parser import _COMPLEX_RE, parse_expression
from .reports import eval_report, scan_report, verify_report, write_report

_SCAN_NAMES = ("limitA", "limitB", "theta-ratio", "qpoch-ratio", "linear-sum")
_DEFAULT_SCAN_TOL = 5e-2
_DEFAULT_LAMBDA = 1.1


class _UsageError(Exception):
    pass


def _complex_arg(text: str):
    try:
        return complex(float(text))
    except ValueError:
        pass
    m = _COMPLEX_RE.fullmatch(text)
    if m:
        return complex(float(m.group(1)), float(m.group(2)))
    raise argparse.ArgumentTypeError(
        f"expected a number or a+bi literal, got {text!r}")


def _common_flags(p: argparse.ArgumentParser):
    p.add_argument("--tol", type=float, default=None,
                   help="comparison tolerance (default: the command's own)")
    p.add_argument("--max-terms", type=int, default=None,
                   help="series term cap (overrides QRESUM_MAX_TERMS)")
    p.add_argument("--lambda", dest="lam", type=_complex_arg, default=None,
                   help="Laplace base point (default 1.1)")
    p.add_argument("--format", choices=("json", "csv"), default=None,
                   help="report format; default prints a summary line")
    p.add_argument("--out", default=None, help="write the report to a file")
    p.add_argument("--jobs", type=int, default=1,
                   help="worker threads for grid evaluation")


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="qresum",
        description="q-series resummation toolkit: evaluate, verify, scan.")
    sub = ap.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("eval", help="evaluate a call expression")
    pe.add_argument("expr", help='e.g. "theta(q=0.5, z=-1)"')
    _common_flags(pe)

    pv = sub.add_parser("verify", help="run a named identity suite")
    pv.add_argument("identity",
                    help="suite name; an unknown name lists the choices")
    pv.add_argument("--grid", default="default", choices=("default", "quick"),
                    help="grid size preset")
    _common_flags(pv)

    ps = sub.add_parser("scan", help="run a q->1 limit scan")
    ps.add_argument("limit", choices=_SCAN_NAMES)
    ps.add_argument("--schedule", default="default",
                    help='"default", "k=LO..HI" (q=1-2^-k), or comma list')
    ps.add_argument("--alpha", type=float, default=None)
    ps.add_argument("--beta", type=float, default=None)
    ps.add_argument("--x", type=_complex_arg, default=None)
    ps.add_argument("--z", type=_complex_arg, default=None)
    ps.add_argument("--form", choices=("plain", "scaled"), default="plain")
    _common_flags(ps)
    return ap


def _resolve_max_terms(args) -> Optional[int]:
    if args.max_terms is not None:
        return args.max_terms
    env = os.environ.get("QRESUM_MAX_TERMS")
    if env is None:
        return None
    try:
        n = int(env)
    except ValueError:
        raise _UsageError(f"QRESUM_MAX_TERMS must be an integer, got {env!r}")
    if n <= 0:
        raise _UsageError("QRESUM_MAX_TERMS must be positive")
    return n


def _parse_schedule(spec: str) -> LimitSchedule:
    if spec == "default":
        return LimitSchedule()
    m = re.fullmatch(r"k=(\d+)\.\.(\d+)", spec)
    if m:
        lo, hi = int(m.group(1)), int(m.group(2))
        if lo >= hi:
            raise _UsageError("schedule k=LO..HI needs LO < HI")
        return LimitSchedule(
            q_values=tuple(1.0 - 2.0 ** (-k) for k in range(lo, hi + 1)))
    try:
        qs = tuple(float(s) for s in spec.split(","))
    except ValueError:
        raise _UsageError(f"cannot parse schedule {spec!r}")
    return LimitSchedule(q_values=qs)


def _emit(report: dict, fmt: Optional[str], out: Optional[str],
          summary: str) -> None:
    if fmt is None and out is None:
        print(summary)
        return
    text = write_report(report, fmt or "json", out)
    if text is not None:
        sys.stdout.write(text)
    else:
        print(summary)


def _cmd_eval(args) -> int:
    node = parse_expression(args.expr)
    opts = EvalOptions(max_terms=_resolve_max_terms(args), lam=args.lam)
    value = evaluate_expression(node, opts)
    if args.format == "csv":
        raise _UsageError("eval supports --format json only")
    if args.format == "json" or args.out is not None:
        report = eval_report(format_expr(node), value)
        text = write_report(report, "json", args.out)
        if text is not None:
            sys.stdout.write(text)
        else:
            print(format_complex(value))
    else:
        print(format_complex(value))
    return 0


def _cmd_verify(args) -> int:
    names = suite_names()
    if args.identity not in names:
        raise _UsageError(
            f"unknown identity '{args.identity}'; available: "
            + ", ".join(names))
    res = run_suite(args.identity, tol=args.tol, grid=args.grid,
                    max_terms=_resolve_max_terms(args), lam=args.lam,
                    jobs=args.jobs)
    report = verify_report(res, args.grid)
    verdict = "PASS" if res.passed else "FAIL"
    summary = (f"{res.name}: {len(res.rows)} points, max rel err "
               f"{res.max_rel_err:.3e}, tol {res.tol:g}: {verdict}")
    _emit(report, args.format, args.out, summary)
    return 0 if res.passed else 1


def _scan_passed(rep, tol: float) -> bool:
    if not (rep.monotone and rep.errors[-1] < tol):
        return False
    if rep.extrapolated_error is None or rep.extrapolated_error >= tol / 5.0:
        return False
    if rep.identity_errors is not None:
        return all(e < 1e-10 for e in rep.identity_errors)
    return True


def _cmd_scan(args) -> int:
    sched = _parse_schedule(args.schedule)
    lam = args.lam if args.lam is not None else _DEFAULT_LAMBDA
    cfg = LaplaceConfig(lam=lam)
    rep = run_limit_scan(args.limit, alpha=args.alpha, beta=args.beta,
                         x=args.x, z=args.z, form=args.form,
                         sched=sched, cfg=cfg)
    tol = args.tol if args.tol is not None else _DEFAULT_SCAN_TOL
    passed = _scan_passed(rep, tol)
    params = {"alpha": args.alpha, "beta": args.beta, "x": args.x,
              "z": args.z}
    if args.limit == "theta-ratio":
        params["form"] = args.form
    report = scan_report(rep, params, tol, passed)
    verdict = "PASS" if passed else "FAIL"
    extra = ("n/a" if rep.extrapolated_error is None
             else f"{rep.extrapolated_error:.3e}")
    summary = (f"{rep.name}: final value {format_complex(rep.values[-1])}, "
               f"target {format_complex(complex(rep.target))}, final err "
               f"{rep.errors[-1]:.3e}, extrapolated err {extra}, "
               f"monotone {'yes' if rep.monotone else 'no'}: {verdict}")
    _emit(report, args.format, args.out, summary)
    return 0 if passed else 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 0 if not e.code else 2
    try:
        if args.command == "eval":
            return _cmd_eval(args)
        if args.command == "verify":
            return _cmd_verify(args)
        return _cmd_scan(args)
    except _UsageError as e:
        print(f"qresum: {e}", file=sys.stderr)
        return 2
    except ExpressionError as e:
        print(f"qresum: {e}", file=sys.stderr)
        return 2
    except QResumError as e:
        print(f"qresum: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    except (OverflowError, ZeroDivisionError, ValueError) as e:
        print(f"qresum: {type(e).__name__}: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

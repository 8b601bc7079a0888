"""Command-line front end.

    subleading analyze --curve 0,-1,1,-10,-20
    subleading analyze --coeffs f.txt --conductor 11 --sign +1
    subleading batch curves.csv out.csv
    subleading ratio --degree 1 --disc 1 --conductor 11
    subleading coeffs --curve 0,-1,1,-10,-20 --count 100 --out f.txt
    subleading selftest

Exit codes: 0 theorem check passed, 2 theorem check failed, 1 error.
``SUBLEADING_THREADS`` sets the batch worker count.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import analytic_engine as ae
from .curve_model import WeierstrassCurve, conductor, minimal_model
from .dirichlet_coefficients import curve_coefficients
from .factor import FactorizationIncomplete
from .pipeline import AnalysisRequest, run
from .selftest import run_selftest, scoreboard
from .theorem import FieldInvariants, predicted_ratio, sign_boundary, sign_threshold

EXIT_PASS, EXIT_ERROR, EXIT_FAIL = 0, 1, 2

BATCH_COLUMNS = [
    "label", "a1", "a2", "a3", "a4", "a6", "conductor", "epsilon", "rank",
    "a_r", "a_r1", "rho", "abs_residual", "status", "error",
]


def error_code(exc: BaseException) -> str:
    code = getattr(exc, "code", None)
    if code:
        return code
    if isinstance(exc, FactorizationIncomplete):
        return "factorization-incomplete"
    if isinstance(exc, (ValueError, OSError)):
        return "invalid-request"
    return "internal-error"


def _error_json(exc: BaseException) -> str:
    return json.dumps({"error": {"code": error_code(exc), "message": str(exc)}}, sort_keys=True, indent=2)


def _sign(text: str) -> int:
    value = int(text)
    if value not in (1, -1):
        raise argparse.ArgumentTypeError("sign must be +1 or -1")
    return value


def cmd_analyze(args) -> int:
    try:
        curve = WeierstrassCurve.parse(args.curve) if args.curve else None
        request = AnalysisRequest(
            curve=curve,
            coeff_file=args.coeffs,
            conductor_override=args.conductor,
            sign_override=args.sign,
            digits=args.digits,
            t0=args.t0,
            max_derivative=args.max_derivative,
            tolerance=args.tol,
        )
        report = run(request)
    except Exception as exc:
        print(_error_json(exc))
        return EXIT_ERROR
    print(report.to_json(args.digits, timings=args.timings))
    return EXIT_PASS if report.passed else EXIT_FAIL


def _batch_row(row: dict, tol: float) -> dict:
    out = {k: row.get(k, "") for k in ("label", "a1", "a2", "a3", "a4", "a6")}
    try:
        curve = WeierstrassCurve(*(int(row[k]) for k in ("a1", "a2", "a3", "a4", "a6")))
        rep = run(AnalysisRequest(curve=curve, tolerance=tol))
        v = rep.verdict
        out.update(
            conductor=rep.conductor, epsilon=rep.epsilon, rank=rep.rank,
            a_r=repr(rep.a_r), a_r1=repr(rep.a_r1), rho=repr(v.rho),
            abs_residual=f"{v.abs_residual:.3e}", status="pass" if v.passed else "fail", error="",
        )
    except Exception as exc:
        out.update(status="error", error=error_code(exc))
    return out


def batch(rows: list[dict], tol: float = 1e-6, threads: int | None = None) -> list[dict]:
    threads = threads or int(os.environ.get("SUBLEADING_THREADS", "1") or 1)
    if threads <= 1:
        return [_batch_row(r, tol) for r in rows]
    with ThreadPoolExecutor(threads) as pool:
        return list(pool.map(lambda r: _batch_row(r, tol), rows))


def cmd_batch(args) -> int:
    with open(args.input, newline="") as fh:
        reader = csv.DictReader(fh)
        rows = list(reader)
    results = batch(rows, args.tol)
    with open(args.output, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=BATCH_COLUMNS)
        writer.writeheader()
        writer.writerows(results)
    counts = {s: sum(r["status"] == s for r in results) for s in ("pass", "fail", "error")}
    print(f"pass={counts['pass']} fail={counts['fail']} error={counts['error']}")
    if counts["fail"]:
        return EXIT_FAIL
    return EXIT_ERROR if counts["error"] else EXIT_PASS


def cmd_ratio(args) -> int:
    try:
        inv = FieldInvariants(args.conductor, args.degree, args.disc)
    except ValueError as exc:
        print(_error_json(exc))
        return EXIT_ERROR
    rho = predicted_ratio(inv)
    out = {
        "degree": args.degree,
        "disc": args.disc,
        "conductor": args.conductor,
        "rho": float(f"{rho:.{args.digits}g}"),
        "sign_threshold": sign_threshold(args.degree, abs(args.disc)),
    }
    try:
        out["sign_boundary"] = float(f"{sign_boundary(args.degree, abs(args.disc)):.{args.digits}g}")
    except OverflowError:
        out["sign_boundary"] = "inf"
    print(json.dumps(out, sort_keys=True, indent=2))
    return EXIT_PASS


def cmd_coeffs(args) -> int:
    try:
        E = minimal_model(WeierstrassCurve.parse(args.curve)).curve
        cond = conductor(E)
        count = args.count or ae.truncation_for(cond.value, max(ae.SIGN_TEST_T0))
        curve_coefficients(E, count, cond.local).to_file(args.out)
    except Exception as exc:
        print(_error_json(exc))
        return EXIT_ERROR
    print(json.dumps({"conductor": cond.value, "count": count, "path": args.out}, sort_keys=True))
    return EXIT_PASS


def cmd_selftest(args) -> int:
    results = run_selftest(gamma_shift=args.canary_gamma_shift, wrong_sign=args.canary_wrong_sign)
    print(scoreboard(results))
    return EXIT_PASS if all(r.passed for r in results) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="subleading",
        description="Leading and sub-leading Taylor coefficients of L(E,s) at s=1.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="analyze one curve or coefficient file")
    src = a.add_mutually_exclusive_group(required=True)
    src.add_argument("--curve", help='"a1,a2,a3,a4,a6"')
    src.add_argument("--coeffs", help="file with a_n on line n")
    a.add_argument("--conductor", type=int)
    a.add_argument("--sign", type=_sign)
    a.add_argument("--digits", type=int, default=10)
    a.add_argument("--t0", type=float, default=1.0)
    a.add_argument("--max-derivative", type=int, default=ae.MAX_DERIVATIVE)
    a.add_argument("--tol", type=float, default=1e-6)
    a.add_argument("--timings", action="store_true", help="include wall-clock timings (non-deterministic)")
    a.set_defaults(func=cmd_analyze)

    b = sub.add_parser("batch", help="analyze every curve in a CSV")
    b.add_argument("input")
    b.add_argument("output")
    b.add_argument("--tol", type=float, default=1e-6)
    b.set_defaults(func=cmd_batch)

    r = sub.add_parser("ratio", help="predicted a_{r+1}/a_r and the sign threshold")
    r.add_argument("--degree", type=int, default=1)
    r.add_argument("--disc", type=int, default=1)
    r.add_argument("--conductor", type=int, required=True)
    r.add_argument("--digits", type=int, default=10)
    r.set_defaults(func=cmd_ratio)

    c = sub.add_parser("coeffs", help="write a_1..a_M of a curve to a file")
    c.add_argument("--curve", required=True)
    c.add_argument("--count", type=int)
    c.add_argument("--out", required=True)
    c.set_defaults(func=cmd_coeffs)

    s = sub.add_parser("selftest", help="run the embedded invariant suites")
    s.add_argument("--canary-gamma-shift", type=float, default=0.0, help=argparse.SUPPRESS)
    s.add_argument("--canary-wrong-sign", action="store_true", help=argparse.SUPPRESS)
    s.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

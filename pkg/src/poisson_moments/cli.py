"""Command-line front-end.

Subcommands: moment, sum, verify, simulate, matching.  Results go to
stdout as text, JSON, or CSV; diagnostics go to stderr.  Exit codes:
0 success, 1 verification failure, 2 usage error, 3 internal
cross-check mismatch.

Rationals are always emitted losslessly as numerator/denominator
strings; decimal renderings are labeled approximate.  Column layouts
for CSV are documented in docs/formats.md.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from fractions import Fraction

from . import closed_forms, identities, matching_lab, oracles
from .exact_arith import Rat

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_CROSS_CHECK = 3

_SEED_ENV = "POISSON_MOMENTS_SEED"


def _fmt_float(x: float) -> str:
    return format(x, ".17g")


def _rat_fields(q: Rat) -> dict:
    return {"num": str(q.numerator), "den": str(q.denominator),
            "approx": float(q)}


def _default_seed() -> int:
    return int(os.environ.get(_SEED_ENV, "0"))


def _positive_rational(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text}")
    return value


def _emit(record: dict, rows: list[dict], fmt: str) -> None:
    """Write one result record; `rows` is its tabular (CSV) projection."""
    if fmt == "json":
        print(json.dumps(record, indent=2))
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        for row in rows:
            writer.writerow({k: (_fmt_float(v) if isinstance(v, float) else v)
                             for k, v in row.items()})
        sys.stdout.write(buf.getvalue())
    else:
        for line in _text_lines(record):
            print(line)


def _text_lines(record: dict):
    yield f"command: {record['command']}"
    for key, value in record["parameters"].items():
        yield f"  {key} = {value}"
    for key, value in record["results"].items():
        if isinstance(value, dict) and "num" in value:
            yield f"  {key} = {value['num']}/{value['den']} (approx {_fmt_float(value['approx'])})"
        else:
            yield f"  {key} = {value}"
    yield f"  timing_ms = {record['timing_ms']:.3f}"


def _record(command: str, parameters: dict, results: dict, t0: float) -> dict:
    return {"command": command, "parameters": parameters, "results": results,
            "timing_ms": (time.perf_counter() - t0) * 1000.0}


def cmd_moment(args) -> int:
    t0 = time.perf_counter()
    q = closed_forms.MomentQuery(k=args.k, r=args.r, a=args.a, lam=args.lam)
    value = closed_forms.moment(q).value
    results = {"moment": _rat_fields(value)}
    if args.cross_check:
        i = args.k + args.r
        methods = {"first_principles":
                   oracles.exact_moment_first_principles(i, args.k, args.a, args.lam)}
        if args.a % 2 == 0:
            methods["even_general"] = closed_forms.even_moment_general(
                i, args.k, args.a, args.lam).value
        else:
            methods["lemma2"] = closed_forms.odd_moment_lemma2(
                i, args.k, args.a, args.lam).value
            methods["lemma3"] = closed_forms.odd_moment_lemma3(
                i, args.k, args.a, args.lam).value
        if args.r == 0:
            methods["diagonal"] = closed_forms.diagonal_moment(
                args.k, args.a, args.lam).value
        mismatches = {name: str(v) for name, v in methods.items() if v != value}
        results["cross_check"] = {"methods": sorted(methods), "agree": not mismatches}
        if mismatches:
            print(f"cross-check mismatch: {mismatches}", file=sys.stderr)
            return EXIT_CROSS_CHECK
    record = _record("moment", {"k": args.k, "r": args.r, "a": args.a,
                                "lambda": str(args.lam)}, results, t0)
    row = {"command": "moment", "k": args.k, "r": args.r, "a": args.a,
           "lambda": str(args.lam),
           "num": results["moment"]["num"], "den": results["moment"]["den"],
           "approx": results["moment"]["approx"],
           "cross_check": args.cross_check}
    _emit(record, [row], args.format)
    return EXIT_OK


def cmd_sum(args) -> int:
    t0 = time.perf_counter()
    value = closed_forms.sum_moments(args.n, args.a, args.lam).value
    results = {"sum": _rat_fields(value)}
    if args.verify:
        by_terms = sum(closed_forms.diagonal_moment(k, args.a, args.lam).value
                       for k in range(1, args.n + 1))
        results["verified"] = by_terms == value
        if by_terms != value:
            print(f"term-by-term mismatch: {by_terms} != {value}", file=sys.stderr)
            return EXIT_CROSS_CHECK
    record = _record("sum", {"n": args.n, "a": args.a, "lambda": str(args.lam)},
                     results, t0)
    row = {"command": "sum", "n": args.n, "a": args.a, "lambda": str(args.lam),
           "num": results["sum"]["num"], "den": results["sum"]["den"],
           "approx": results["sum"]["approx"],
           "verified": results.get("verified", "")}
    _emit(record, [row], args.format)
    return EXIT_OK


def cmd_verify(args) -> int:
    t0 = time.perf_counter()
    suites = list(identities.SUITES) if args.suite == "all" else [args.suite]
    reports = [identities.run_suite(name, max_a=args.max_a, max_k=args.max_k,
                                    max_n=args.max_n)
               for name in suites]
    results = {r.name: {"cases": len(r.parameter_set),
                        "all_passed": r.all_passed,
                        "first_failure": (None if r.first_failure is None
                                          else [str(p) for p in r.first_failure])}
               for r in reports}
    record = _record("verify", {"suite": args.suite}, results, t0)
    rows = [{"command": "verify", "suite": name, "cases": res["cases"],
             "all_passed": res["all_passed"],
             "first_failure": "" if res["first_failure"] is None
             else "/".join(res["first_failure"])}
            for name, res in results.items()]
    _emit(record, rows, args.format)
    for r in reports:
        if not r.all_passed:
            print(f"identity suite {r.name} FAILED at {r.first_failure}",
                  file=sys.stderr)
            return EXIT_VERIFY_FAILED
    return EXIT_OK


def cmd_simulate(args) -> int:
    t0 = time.perf_counter()
    est = oracles.mc_moment(args.k, args.r, args.b, float(args.lam),
                            args.samples, args.seed)
    results = {"mean": est.mean, "stderr": est.stderr,
               "samples": est.samples, "seed": est.seed}
    exact_num = exact_den = zscore = ""
    if float(args.b).is_integer():
        exact = closed_forms.moment(closed_forms.MomentQuery(
            k=args.k, r=args.r, a=int(args.b), lam=args.lam)).value
        results["exact"] = _rat_fields(exact)
        results["zscore"] = est.zscore(float(exact))
        exact_num, exact_den = str(exact.numerator), str(exact.denominator)
        zscore = results["zscore"]
    record = _record("simulate", {"k": args.k, "r": args.r, "b": args.b,
                                  "lambda": str(args.lam),
                                  "samples": args.samples, "seed": args.seed},
                     results, t0)
    row = {"command": "simulate", "k": args.k, "r": args.r, "b": args.b,
           "lambda": str(args.lam), "samples": args.samples, "seed": args.seed,
           "mean": est.mean, "stderr": est.stderr,
           "exact_num": exact_num, "exact_den": exact_den, "zscore": zscore}
    _emit(record, [row], args.format)
    return EXIT_OK


def cmd_matching(args) -> int:
    t0 = time.perf_counter()
    n_grid = []
    n = args.n_min
    while n <= args.n_max:
        n_grid.append(n)
        n *= args.grid_factor
    fit = matching_lab.scaling_experiment(args.b, n_grid, args.trials, args.seed)
    results = {"n_grid": fit.n_grid, "mean_costs": fit.mean_costs,
               "slope": fit.slope, "intercept": fit.intercept,
               "r_squared": fit.r_squared}
    record = _record("matching", {"b": args.b, "n_min": args.n_min,
                                  "n_max": args.n_max,
                                  "grid_factor": args.grid_factor,
                                  "trials": args.trials, "seed": args.seed},
                     results, t0)
    rows = [{"command": "matching", "b": args.b, "n": n, "mean_cost": c,
             "slope": fit.slope, "intercept": fit.intercept,
             "r_squared": fit.r_squared, "trials": args.trials,
             "seed": args.seed}
            for n, c in zip(fit.n_grid, fit.mean_costs)]
    _emit(record, rows, args.format)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="poisson-moments",
        description="Exact Poisson event-distance moments, identity "
                    "verification, Monte Carlo cross-checks, and matching "
                    "scaling experiments.")
    parser.add_argument("--format", choices=("json", "csv", "text"),
                        default="text")
    parser.add_argument("--threads", type=int, default=1,
                        help="reserved; results never depend on it")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("moment", help="exact moment E|X_{k+r} - Y_k|^a")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--r", type=int, default=0)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=_positive_rational,
                   default=Fraction(1))
    p.add_argument("--cross-check", action="store_true")
    p.set_defaults(func=cmd_moment)

    p = sub.add_parser("sum", help="exact partial sum of diagonal moments")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=_positive_rational,
                   default=Fraction(1))
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_sum)

    p = sub.add_parser("verify", help="run identity suites")
    p.add_argument("--suite", choices=("all",) + identities.SUITES,
                   default="all")
    p.add_argument("--max-a", type=int, default=None)
    p.add_argument("--max-k", type=int, default=None)
    p.add_argument("--max-n", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", help="Monte Carlo moment estimate")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--r", type=int, default=0)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--lambda", dest="lam", type=_positive_rational,
                   default=Fraction(1))
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("matching", help="matching-cost scaling experiment")
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--n-min", type=int, default=8)
    p.add_argument("--n-max", type=int, default=4096)
    p.add_argument("--grid-factor", type=int, default=2)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_matching)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "seed", None) is None and hasattr(args, "seed"):
        args.seed = _default_seed()
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    run()

"""Command-line front end: ``maxclass theta|census|verify``.

Exit codes: 0 success, 1 verification failure or method disagreement,
2 usage error, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from . import census, cyclic, subgroups as sg
from .errors import BudgetError, UsageError
from .involutions import Involution
from .maximal_class import Family
from .report import FORMATS, SubgroupCensus, emit
from .verify import SUITE_NAMES, VerifySuite, parse_n_range, run_verify

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

SUBGROUP_KINDS = ("v", "v2", "si", "ssym", "vuni", "w", "j", "h", "l", "m")


def _global_options(parser: argparse.ArgumentParser) -> None:
    s = argparse.SUPPRESS
    parser.add_argument("--format", choices=FORMATS, default=s)
    parser.add_argument("--workers", type=int, default=s)
    parser.add_argument("--seed", type=int, default=s)
    parser.add_argument("--budget", type=float, default=s, help="seconds")
    parser.add_argument("--out", default=s, metavar="FILE")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="maxclass", description=__doc__.splitlines()[0])
    _global_options(parser)
    sub = parser.add_subparsers(dest="command", required=True)

    theta = sub.add_parser("theta", help="count solutions of x^2 = 1 in V(F2G)")
    _global_options(theta)
    theta.add_argument("--family", required=True)
    theta.add_argument("--n", type=int, required=True)
    theta.add_argument("--method", choices=[m.value for m in census.Method], default="formula")
    theta.add_argument("--order-source", choices=["formula", "enumerated"], default="formula")
    theta.add_argument("--check", action="store_true", help="compare with the closed form")

    cen = sub.add_parser("census", help="order of one subgroup of V(F2C)")
    _global_options(cen)
    cen.add_argument("--n", type=int, required=True)
    cen.add_argument("--sigma", default="star")
    cen.add_argument("--subgroup", choices=SUBGROUP_KINDS, required=True)
    cen.add_argument("--i", type=int)
    cen.add_argument("--z")

    ver = sub.add_parser("verify", help="run a verification suite")
    _global_options(ver)
    ver.add_argument("--suite", choices=SUITE_NAMES, default="all")
    ver.add_argument("--n-range")
    ver.add_argument("--samples", type=int, default=1000)
    return parser


def _settings(args) -> dict:
    env_workers = os.environ.get("MAXCLASS_WORKERS")
    env_budget = os.environ.get("MAXCLASS_BUDGET")
    workers = getattr(args, "workers", None)
    budget = getattr(args, "budget", None)
    try:
        if workers is None:
            workers = int(env_workers) if env_workers else 1
        if budget is None and env_budget:
            budget = float(env_budget)
    except ValueError:
        raise UsageError("MAXCLASS_WORKERS / MAXCLASS_BUDGET must be numeric") from None
    if workers < 1:
        raise UsageError("--workers must be positive")
    return {
        "format": getattr(args, "format", "json"),
        "workers": workers,
        "budget": budget,
        "seed": getattr(args, "seed", 0),
        "out": getattr(args, "out", None),
    }


def _spec_from_args(args, ctx) -> sg.SubgroupSpec:
    kind = args.subgroup
    sigma = Involution.parse(args.sigma)
    needs_i = kind in ("si", "h", "l")
    if needs_i and args.i is None:
        raise UsageError(f"--subgroup {kind} needs --i")
    if kind == "m" and args.z is None:
        raise UsageError("--subgroup m needs --z")
    builders = {
        "v": sg.full_v,
        "v2": sg.lower_layer,
        "si": lambda: sg.s_i(args.i),
        "ssym": lambda: sg.symmetric(sigma),
        "vuni": lambda: sg.unitary(sigma),
        "w": lambda: sg.w(sigma),
        "j": lambda: sg.j(sigma),
        "h": lambda: sg.h(sigma, args.i),
        "l": lambda: sg.l(sigma, args.i),
        "m": lambda: sg.m(sigma, cyclic.parse_elem(args.z, ctx)),
    }
    return builders[kind]()


def _cmd_theta(args, st) -> tuple[object, int]:
    family = Family.parse(args.family)
    method = census.Method(args.method)
    report = census.run_method(family, args.n, method, args.order_source, st["budget"], st["workers"])
    code = EXIT_OK
    if report.budget_exhausted:
        code = EXIT_BUDGET
    elif args.check:
        if method is census.Method.FORMULA:
            other = census.count_proof_decomposition(family, args.n, "formula").total
        else:
            other = census.theta_formula(family, args.n)
        if other != report.total:
            print(f"disagreement: {method.value} gives {report.total}, reference gives {other}", file=sys.stderr)
            code = EXIT_FAIL
    return report, code


def _cmd_census(args, st) -> tuple[object, int]:
    ctx = cyclic.make_context(args.n)
    spec = _spec_from_args(args, ctx)
    t0 = time.perf_counter()
    group = sg.enumerate_subgroup(ctx, spec)
    return SubgroupCensus(spec.label, args.n, group.order, group.empty, time.perf_counter() - t0), EXIT_OK


def _cmd_verify(args, st) -> tuple[object, int]:
    n_range = parse_n_range(args.n_range) if args.n_range else None
    report = run_verify(VerifySuite(args.suite, n_range, args.samples, st["seed"]))
    return report, EXIT_OK if report.passed else EXIT_FAIL


COMMANDS = {"theta": _cmd_theta, "census": _cmd_census, "verify": _cmd_verify}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        st = _settings(args)
        report, code = COMMANDS[args.command](args, st)
    except BudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        emit(report, st["format"], st["out"] or sys.stdout)
    except OSError as exc:
        print(f"error: cannot write report: {exc}", file=sys.stderr)
        return EXIT_FAIL
    return code


if __name__ == "__main__":
    sys.exit(main())

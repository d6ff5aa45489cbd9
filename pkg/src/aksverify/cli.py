"""Command-line frontend.

Exit codes: 0 success (PRIME for ``test``/``trace``), 1 composite or failed
check, 2 usage, parse or I/O error.
"""

from __future__ import annotations

import argparse
import os
import sys

from .aks import Verdict, aks_is_prime
from .errors import DomainError, PropertyViolation
from .fastdiv import bench_divide
from .suites import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
DEFAULT_DEGREES = "64,256,1024,4096"


def parse_natural(text: str) -> int:
    s = text.strip().replace("_", "")
    if s.lower().startswith("0x"):
        value = int(s[2:], 16)
    elif s.isdigit():
        value = int(s)
    else:
        raise ValueError(f"not a nonnegative integer: {text!r}")
    if value < 0:
        raise ValueError(f"not a nonnegative integer: {text!r}")
    return value


def _natural_arg(text: str) -> int:
    try:
        return parse_natural(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _degrees_arg(text: str) -> list[int]:
    try:
        return [parse_natural(d) for d in text.split(",") if d.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def cmd_test(args: argparse.Namespace) -> int:
    verdict, _ = aks_is_prime(args.n)
    print(verdict.value)
    return EXIT_OK if verdict is Verdict.PRIME else EXIT_FAIL


def cmd_trace(args: argparse.Namespace) -> int:
    verdict, trace = aks_is_prime(args.n)
    text = trace.to_json()
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            print(f"cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_USAGE
    else:
        print(text)
    return EXIT_OK if verdict is Verdict.PRIME else EXIT_FAIL


def cmd_verify(args: argparse.Namespace) -> int:
    if args.suite not in SUITES:
        print(f"unknown suite {args.suite!r}; choose from: {', '.join(SUITES)}", file=sys.stderr)
        return EXIT_USAGE
    ranges = {k: getattr(args, k) for k in ("max_n", "max_p", "max_m", "max_r") if getattr(args, k) is not None}
    seed = args.seed
    env_seed = os.environ.get("AKS_SEED")
    if env_seed is not None:
        try:
            seed = parse_natural(env_seed)
        except ValueError:
            print(f"AKS_SEED is not a nonnegative integer: {env_seed!r}", file=sys.stderr)
            return EXIT_USAGE
    try:
        report = run_suite(args.suite, ranges, seed=seed, jobs=args.jobs)
    except DomainError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    print(report.render())
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_bench(args: argparse.Namespace) -> int:
    try:
        report = bench_divide(args.degrees, args.modulus, args.trials)
    except DomainError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except PropertyViolation as exc:
        print(f"cross-check mismatch: {exc}", file=sys.stderr)
        return EXIT_FAIL
    print(f"modulus {report.modulus}")
    print(f"{'degree':>8} {'schoolbook_ns':>15} {'ks_ns':>15} {'ratio':>8}")
    for row in report.rows:
        print(f"{row.degree:>8} {row.schoolbook_ns:>15} {row.ks_ns:>15} {row.ratio:>8.3f}")
    if args.json:
        try:
            with open(args.json, "w", encoding="utf-8") as fh:
                fh.write(report.to_json() + "\n")
        except OSError as exc:
            print(f"cannot write {args.json}: {exc}", file=sys.stderr)
            return EXIT_USAGE
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    # argparse itself exits with status 2 on usage errors
    parser = argparse.ArgumentParser(prog="aksverify", description="AKS primality test and lemma verification harness")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("test", help="print PRIME or COMPOSITE")
    p.add_argument("n", type=_natural_arg, help="decimal or 0x-hex")
    p.set_defaults(func=cmd_test)

    p = sub.add_parser("trace", help="emit the JSON trace of one run")
    p.add_argument("n", type=_natural_arg)
    p.add_argument("--out", help="write to this file instead of stdout")
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("verify", help="run one property suite")
    p.add_argument("suite", help=", ".join(SUITES))
    for flag in ("--max-n", "--max-p", "--max-m", "--max-r"):
        p.add_argument(flag, type=_natural_arg, default=None)
    p.add_argument("--seed", type=_natural_arg, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="schoolbook vs Kung-Sieveking division timings")
    p.add_argument("--degrees", type=_degrees_arg, default=_degrees_arg(DEFAULT_DEGREES))
    p.add_argument("--modulus", type=_natural_arg, default=2_147_483_647)
    p.add_argument("--trials", type=_natural_arg, default=3)
    p.add_argument("--json", help="also write the report as JSON")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

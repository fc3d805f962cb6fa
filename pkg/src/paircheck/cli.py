"""Command-line interface: ``check``, ``bench``, and ``instrument``.

Exit codes:

* 0 — clean: no races, deadlocks, or block-forever errors
* 1 — race(s) found
* 2 — deadlock found
* 3 — block-forever found
* 4 — input, usage, or parse error
* 5 — step budget exhausted

When several findings apply, the lowest nonzero code wins.
"""

from __future__ import annotations

import argparse
import json
import sys
from enum import IntEnum

from .analysis import bench_table, render_report
from .engine import BudgetExceeded, ExplorationConfig, explore
from .instrument import InstrumentError, InstrumentOptions
from .instrument import instrument as instrument_source
from .instrument import strip as strip_source
from .toylang import ParseError, parse

__all__ = ["ExitStatus", "main", "entry"]


class ExitStatus(IntEnum):
    CLEAN = 0
    RACE = 1
    DEADLOCK = 2
    BLOCK_FOREVER = 3
    INPUT_ERROR = 4
    BUDGET_EXHAUSTED = 5


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on bad usage; route through INPUT_ERROR instead
    def error(self, message: str):  # noqa: A003 - argparse API
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="paircheck",
        description="Explicit-state model checker for two-thread programs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="explore a program and report findings")
    check.add_argument("file", help="program source file")
    check.add_argument("--no-prune", action="store_true", help="do not cut equal-state subtrees")
    check.add_argument(
        "--no-race-detect",
        action="store_true",
        help="drop the state table entirely (exhaustive search, no pruning)",
    )
    check.add_argument(
        "--digest", action="store_true", help="store 128-bit snapshot digests in the table"
    )
    check.add_argument("--max-steps", type=int, default=1_000_000, metavar="N")
    check.add_argument("--format", choices=("text", "json"), default="text")

    bench = sub.add_parser("bench", help="pruning-effectiveness benchmark table")
    bench.add_argument("--min", type=int, default=3, dest="n_min", metavar="N")
    bench.add_argument("--max", type=int, default=8, dest="n_max", metavar="N")
    bench.add_argument("--max-steps", type=int, default=10_000_000, metavar="N")
    bench.add_argument("--format", choices=("text", "json"), default="text")

    instr = sub.add_parser("instrument", help="insert hook tokens into C-like source")
    instr.add_argument("file", help="source file, or - for standard input")
    instr.add_argument("--hook-token", default="hook();", metavar="TOKEN")
    instr.add_argument("--skip-redundant", action="store_true")
    instr.add_argument("--strip", action="store_true", help="remove hook tokens instead")
    instr.add_argument("-o", dest="output", metavar="FILE", help="write here instead of stdout")
    return parser


def _read_source(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _cmd_check(args: argparse.Namespace) -> int:
    if args.digest and args.no_race_detect:
        print("error: --digest needs race detection", file=sys.stderr)
        return ExitStatus.INPUT_ERROR
    try:
        source = _read_source(args.file)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ExitStatus.INPUT_ERROR
    try:
        pair = parse(source)
    except ParseError as exc:
        print(f"error: {args.file}:{exc}", file=sys.stderr)
        return ExitStatus.INPUT_ERROR

    cfg = ExplorationConfig(
        pruning=not args.no_prune,
        race_detection=not args.no_race_detect,
        digest_mode=args.digest,
        max_total_steps=args.max_steps,
    )
    report = explore(pair, cfg)
    sys.stdout.write(render_report(report, args.format))

    if report.race_found:
        return ExitStatus.RACE
    if report.deadlocks:
        return ExitStatus.DEADLOCK
    if report.block_forever:
        return ExitStatus.BLOCK_FOREVER
    if not report.complete:
        return ExitStatus.BUDGET_EXHAUSTED
    return ExitStatus.CLEAN


def _cmd_bench(args: argparse.Namespace) -> int:
    try:
        rows = bench_table(args.n_min, args.n_max, max_total_steps=args.max_steps)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ExitStatus.INPUT_ERROR
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ExitStatus.BUDGET_EXHAUSTED
    if args.format == "json":
        payload = [
            {"n": r.n, "exhaustive": r.exhaustive_count, "pruned": r.pruned_count}
            for r in rows
        ]
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
        return ExitStatus.CLEAN
    width = max(10, *(len(str(r.exhaustive_count)) for r in rows))
    print(f"{'n':>3} {'exhaustive':>{width}} {'pruned':>{width}}")
    for r in rows:
        print(f"{r.n:>3} {r.exhaustive_count:>{width}} {r.pruned_count:>{width}}")
    return ExitStatus.CLEAN


def _cmd_instrument(args: argparse.Namespace) -> int:
    try:
        source = _read_source(args.file)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ExitStatus.INPUT_ERROR
    opts = InstrumentOptions(hook_token=args.hook_token, skip_redundant=args.skip_redundant)
    try:
        result = strip_source(source, opts) if args.strip else instrument_source(source, opts)
    except InstrumentError as exc:
        print(f"error: {args.file}:{exc}", file=sys.stderr)
        return ExitStatus.INPUT_ERROR
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8") as handle:
                handle.write(result)
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return ExitStatus.INPUT_ERROR
    else:
        sys.stdout.write(result)
    return ExitStatus.CLEAN


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ExitStatus.INPUT_ERROR
    if args.command == "check":
        return _cmd_check(args)
    if args.command == "bench":
        return _cmd_bench(args)
    return _cmd_instrument(args)


def entry() -> None:
    raise SystemExit(main())

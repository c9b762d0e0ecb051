"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or configuration
error.  The verify subcommand writes one JSON report per (suite, prime)
into the cache directory (ZSI_CACHE_DIR or .zsi-cache by default) and
prints the collected reports to stdout as JSON or CSV.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .engine import index_certificate, is_minimal_zero_sum, is_zero_sum, norm
from .normalform import NormalForm, find_witness, interval_width
from .reports import (
    DEFAULT_CACHE_DIR,
    ENV_CACHE_DIR,
    SUITES,
    ConfigError,
    RunConfig,
    csv_lines,
    report_dict,
    run_config,
)
from .residues import ResidueSequence
from .suites import classify, enumerate_minimal


class UsageError(Exception):
    pass


def _parse_entries(text: str) -> list[int]:
    try:
        values = [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise UsageError(f"malformed sequence literal {text!r}: {exc}") from exc
    if not values:
        raise UsageError(f"malformed sequence literal {text!r}: no entries")
    return values


def _parse_primes(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            lo_text, hi_text = text.split("..", 1)
            lo, hi = int(lo_text), int(hi_text)
        else:
            lo = hi = int(text)
    except ValueError as exc:
        raise UsageError(f"malformed prime range {text!r}; expected LO..HI") from exc
    return lo, hi


def _sequence_from_args(args: argparse.Namespace) -> ResidueSequence:
    if args.order < 2:
        raise UsageError(f"--order must be at least 2, got {args.order}")
    try:
        return ResidueSequence.of(_parse_entries(args.sequence), args.order)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _cmd_index(args: argparse.Namespace) -> int:
    seq = _sequence_from_args(args)
    cert = index_certificate(seq)
    value = cert.index_value
    if value.denominator == 1:
        print(f"index = {value.numerator} (= {cert.best_norm}/{cert.group_order})")
    else:
        print(f"index = {cert.best_norm}/{cert.group_order}")
    print(f"witness m = {cert.best_multiplier}")
    print(f"norm = {cert.best_norm}")
    print(f"zero-sum = {'yes' if is_zero_sum(seq) else 'no'}")
    if args.verbose:
        for m in seq.order.units():
            print(f"  m={m} norm={norm(seq, m)}")
    return 0


def _cmd_classify(args: argparse.Namespace) -> int:
    try:
        record = classify(args.p)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.format == "json":
        data = {
            "p": record.p,
            "families": [list(f) for f in record.families],
            "orbit_classes": [list(e) for e in record.orbit_representatives()],
        }
        print(json.dumps(data, sort_keys=True, indent=2))
    elif args.format == "csv":
        print("p,x1,x2,x3")
        for family in record.families:
            print(",".join(str(v) for v in (record.p,) + family))
    else:
        print(",".join("(" + ",".join(map(str, f)) + ")" for f in record.families))
    return 0


def _cmd_enumerate(args: argparse.Namespace) -> int:
    repeat = 2 if args.h_min <= 2 else 3
    try:
        for seq in enumerate_minimal(args.p, repeat=repeat):
            print(",".join(map(str, seq.entries)))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return 0


def _cmd_witness(args: argparse.Namespace) -> int:
    try:
        form = NormalForm(args.p, args.a, args.b, args.c)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    result = find_witness(form)
    if result.found is not None:
        print(f"k={result.found[0]} m={result.found[1]}")
    else:
        print("none")
    print(f"k1={result.k1} m1={result.m1}")
    print(f"width_below_k1={interval_width(form, result.k1 - 1)}")
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    cache_dir = args.cache_dir or os.environ.get(ENV_CACHE_DIR) or DEFAULT_CACHE_DIR
    suites = tuple(s.strip() for s in args.suites.split(",") if s.strip())
    try:
        config = RunConfig(
            prime_range=_parse_primes(args.primes),
            suites=suites,
            jobs=args.jobs,
            output_format=args.format,
            cache_dir=cache_dir,
            fail_fast=args.fail_fast,
            force=args.force,
        )
        log = (lambda line: print(line, file=sys.stderr)) if args.verbose else None
        code, reports = run_config(config, log=log)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if config.output_format == "csv":
        for line in csv_lines(reports):
            print(line)
    else:
        print(json.dumps([report_dict(r) for r in reports], sort_keys=True, indent=2))
    summary = f"{sum(r.passed for r in reports)}/{len(reports)} tasks passed"
    print(summary, file=sys.stderr)
    return code


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zsi",
        description="Index of zero-sum sequences over finite cyclic groups.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    p_index = commands.add_parser("index", help="index of a sequence, with witness multiplier")
    p_index.add_argument("sequence", help="comma-separated entries, e.g. 1,1,15,17,28")
    p_index.add_argument("--order", type=int, required=True, help="group order n")
    p_index.add_argument("--verbose", action="store_true", help="print the per-unit norm table")
    p_index.set_defaults(func=_cmd_index)

    p_classify = commands.add_parser("classify", help="index-2 families (1,1,x1,x2,x3) over Z_p")
    p_classify.add_argument("p", type=int)
    p_classify.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p_classify.set_defaults(func=_cmd_classify)

    p_enumerate = commands.add_parser("enumerate", help="minimal zero-sum length-5 sequences over Z_p")
    p_enumerate.add_argument("p", type=int)
    p_enumerate.add_argument("--h-min", type=int, default=2, choices=(2, 3),
                             help="2: shapes (1,1,x1,x2,x3); 3: shapes (1,1,1,x,y)")
    p_enumerate.set_defaults(func=_cmd_enumerate)

    p_witness = commands.add_parser("witness", help="witness scan for a normal form (a, b, c) over Z_p")
    p_witness.add_argument("a", type=int)
    p_witness.add_argument("b", type=int)
    p_witness.add_argument("c", type=int)
    p_witness.add_argument("p", type=int)
    p_witness.set_defaults(func=_cmd_witness)

    p_verify = commands.add_parser("verify", help="run verification suites over a prime range")
    p_verify.add_argument("--suites", required=True,
                          help=f"comma-separated subset of {','.join(SUITES)}")
    p_verify.add_argument("--primes", required=True, help="inclusive range LO..HI")
    p_verify.add_argument("--jobs", type=int, default=1, help="worker processes")
    p_verify.add_argument("--format", choices=("json", "csv"), default="json")
    p_verify.add_argument("--cache-dir", default=None,
                          help=f"report directory (default ${ENV_CACHE_DIR} or {DEFAULT_CACHE_DIR})")
    p_verify.add_argument("--force", action="store_true", help="recompute even when cached passes exist")
    p_verify.add_argument("--fail-fast", action="store_true", help="stop at the first failing task")
    p_verify.add_argument("--verbose", action="store_true", help="progress lines on stderr")
    p_verify.set_defaults(func=_cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    raise SystemExit(main())

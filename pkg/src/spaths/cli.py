"""Command-line front end.

    spaths solve [--verify] [--seed-dump] [--quiet] [--threads N] FILE
    spaths oracle FILE
    spaths gen N M K B SEED [-o FILE]
    spaths stats FILE

Exit codes: 0 success, 2 unreadable or malformed input, 3 internal invariant failure,
4 instance too large for the oracle.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .augment import SearchBugError
from .base import InvariantError
from .instance import GeneratorError, ParseError, format_packing, parse, random_instance, serialize
from .oracle import OracleCapError, brute_force_packing
from .solver import SolveConfig, solve

EXIT_PARSE, EXIT_INVARIANT, EXIT_CAP = 2, 3, 4


def _load(path: str):
    try:
        with open(path) as fh:
            return parse(fh.read())
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from exc


def cmd_solve(args) -> int:
    inst = _load(args.file)
    dump: Optional[list[str]] = [] if args.seed_dump else None
    report = solve(inst, SolveConfig(verify=args.verify, threads=args.threads, dump=dump))
    sys.stdout.write(format_packing(report.packing))
    if dump:
        sys.stderr.write("\n".join(dump) + "\n")
    if not args.quiet:
        print(f"p={report.p} q={report.q} iterations={report.iterations} "
              f"seconds={report.seconds:.3f}", file=sys.stderr)
    return 0


def cmd_oracle(args) -> int:
    inst = _load(args.file)
    p, _ = brute_force_packing(inst)
    print(p)
    return 0


def cmd_gen(args) -> int:
    text = serialize(random_instance(args.n, args.m, args.k, args.b, args.seed))
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_stats(args) -> int:
    inst = _load(args.file)
    report = solve(inst, SolveConfig(threads=args.threads))
    comps = report.components
    rows = {
        "n": inst.n, "m": inst.m, "k": inst.k, "blocks": len(inst.blocks),
        "q": report.q if report.q is not None else "none",
        "p": report.p,
        "components": len(comps),
        "iterations": report.iterations,
        "augment_calls": sum(c.augment_calls for c in comps),
        "field_ops_dependence": sum(c.dependence_ops for c in comps),
        "search_scans": sum(c.search.scans for c in comps),
        "candidate_checks": sum(c.search.candidates for c in comps),
        "rank_fallbacks": sum(c.search.rank_tests for c in comps),
        "rebuilds": sum(c.rebuilds for c in comps),
        "seconds": f"{report.seconds:.3f}",
    }
    for key, val in rows.items():
        print(f"{key}={val}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="spaths", description="Maximum S-path packing solver.")
    sub = ap.add_subparsers(dest="command", required=True)
    p = sub.add_parser("solve", help="solve an instance file and print the packing")
    p.add_argument("file")
    p.add_argument("--verify", action="store_true", help="validate every base and dependence matrix")
    p.add_argument("--seed-dump", action="store_true", help="dump each base and dependence summary to stderr")
    p.add_argument("--quiet", action="store_true", help="no summary line on stderr")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_solve)
    p = sub.add_parser("oracle", help="brute-force packing size (n <= 10)")
    p.add_argument("file")
    p.set_defaults(func=cmd_oracle)
    p = sub.add_parser("gen", help="write a random connected instance")
    for name in ("n", "m", "k", "b", "seed"):
        p.add_argument(name, type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)
    p = sub.add_parser("stats", help="solve and print key=value statistics")
    p.add_argument("file")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_stats)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, GeneratorError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (InvariantError, SearchBugError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except OracleCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP

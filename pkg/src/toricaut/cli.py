"""Command-line interface.

    toricaut analyze INPUT [--format json|text] [--cap N] [--reduce] [--surface] [--verbose] [--jobs N]
    toricaut examples [NAME|all] [--format json|text]

INPUT is a JSON file, ``-`` for stdin, or an inline JSON object. The exit
code of ``analyze`` encodes the verdict: 0 Connected, 10 NotConnected,
11 NotConnectedDegenerate, 2 input error, 3 enumeration cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from .automorphisms import DEFAULT_CAP
from .errors import CapExceededError, InputError
from .report import (
    EXIT_CAP_EXCEEDED,
    EXIT_INPUT_ERROR,
    SCHEMA_VERSION,
    analyze_input,
    examples,
    parse_input,
    render_text,
)


def _error(fmt: str, kind: str, message: str, code: int) -> int:
    if fmt == "json":
        doc = {"schema_version": SCHEMA_VERSION, "error": {"kind": kind, "message": message, "exit_code": code}}
        print(json.dumps(doc, indent=2))
    else:
        print(f"error ({kind}): {message}", file=sys.stderr)
    return code


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=["json", "text"], default="text")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="maximum number of rays to enumerate over")
    p.add_argument("--verbose", action="store_true", help="include both admissible permutation sets")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for the permutation search")
    p.add_argument("--timings", action="store_true", help="include wall-clock timings in the report")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="toricaut", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="analyze one cone")
    pa.add_argument("input", help="JSON file, '-' for stdin, or inline JSON")
    pa.add_argument("--reduce", action="store_true", help="drop non-extreme generators instead of failing")
    pa.add_argument("--surface", action="store_true", help="also run the surface normal form for n=2, r=2")
    _add_common(pa)

    pe = sub.add_parser("examples", help="run the built-in example corpus and check the expected outcomes")
    pe.add_argument("name", nargs="?", default="all")
    _add_common(pe)
    return parser


def _cmd_analyze(args) -> int:
    try:
        parsed = parse_input(args.input)
        if args.reduce:
            parsed.reduce = True
        report = analyze_input(
            parsed,
            cap=args.cap,
            jobs=args.jobs,
            surface=args.surface,
            verbose=args.verbose,
            timings=args.timings,
        )
    except CapExceededError as exc:
        return _error(args.format, "cap_exceeded", str(exc), EXIT_CAP_EXCEEDED)
    except InputError as exc:
        return _error(args.format, "input", str(exc), EXIT_INPUT_ERROR)
    if args.format == "json":
        print(report.to_json())
    else:
        sys.stdout.write(render_text(report))
    return report.exit_code


def _cmd_examples(args) -> int:
    try:
        results = examples(args.name, cap=args.cap, jobs=args.jobs, verbose=args.verbose, timings=args.timings)
    except InputError as exc:
        return _error(args.format, "input", str(exc), EXIT_INPUT_ERROR)
    ok = all(r.passed for r in results)
    if args.format == "json":
        doc = {
            "schema_version": SCHEMA_VERSION,
            "passed": ok,
            "examples": [
                {
                    "name": r.name,
                    "passed": r.passed,
                    "checks": [{"check": c, "passed": p} for c, p in r.checks],
                    "report": r.report.to_dict(),
                }
                for r in results
            ],
        }
        print(json.dumps(doc, indent=2))
    else:
        for r in results:
            for check, passed in r.checks:
                print(f"{'PASS' if passed else 'FAIL'}  {r.name:<16} {check}")
        print(f"{sum(r.passed for r in results)}/{len(results)} examples passed")
    return 0 if ok else 1


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "analyze":
        return _cmd_analyze(args)
    return _cmd_examples(args)


if __name__ == "__main__":
    sys.exit(main())

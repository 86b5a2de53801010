"""Command-line front end.

Exit codes: 0 success, 1 validation failure, 2 refused-infeasible,
3 malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import (
    FormatError,
    SearchInfeasibleError,
    SmallCoversError,
    ValidationError,
)
from .pipeline import RunConfig, report_command, restrict_command, run_pipeline


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit(2); 2 means refused here
        raise _UsageError(message)


def _parse_alphabet(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise _UsageError(f"bad alphabet {text!r}: {exc}") from exc


def build_parser() -> _Parser:
    parser = _Parser(prog="smallcovers", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="build, enumerate and classify")
    run.add_argument(
        "--polytope",
        default="dodecahedron",
        help="dodecahedron, 120cell, or file:PATH",
    )
    run.add_argument("--alphabet", default=None, help="comma-separated labels")
    run.add_argument("--out", default="out", help="artifact directory")
    run.add_argument("--split-depth", type=int, default=0)
    run.add_argument("--max-workers", type=int, default=None)
    run.add_argument("--force-infeasible", action="store_true")
    run.add_argument("--format", choices=("csv", "markdown"), default="csv")

    rep = sub.add_parser("report", help="regenerate the classes report")
    rep.add_argument("--out", default="out")
    rep.add_argument("--format", choices=("csv", "markdown"), default="csv")

    res = sub.add_parser("restrict", help="restrict a labeling to one facet")
    res.add_argument("--out", default="out", help="directory with run artifacts")
    res.add_argument("--facet", type=int, required=True, help="1-based facet index")
    res.add_argument("--index", type=int, default=0, help="labeling row to restrict")
    res.add_argument("--classes-dir", default=None, help="facet classification artifacts")
    return parser


def _run(args) -> int:
    config = RunConfig(
        polytope=args.polytope,
        alphabet=_parse_alphabet(args.alphabet) if args.alphabet else None,
        out_dir=Path(args.out),
        split_depth=args.split_depth,
        max_workers=args.max_workers,
        force_infeasible=args.force_infeasible,
        report_format=args.format,
    )
    summary = run_pipeline(config)
    print(f"labelings: {summary['labeling_count']}")
    print(f"classes: {summary['class_count']}")
    print(
        "stabilizer histogram: "
        + " ".join(f"{o}x{c}" for o, c in summary["stabilizer_histogram"])
    )
    print(f"artifacts: {args.out}")
    return 0


def _report(args) -> int:
    sys.stdout.write(report_command(Path(args.out), args.format))
    return 0


def _restrict(args) -> int:
    result = restrict_command(
        Path(args.out),
        facet=args.facet,
        labeling_index=args.index,
        classes_dir=Path(args.classes_dir) if args.classes_dir else None,
    )
    print(json.dumps(result, indent=2, sort_keys=True))
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "run":
            return _run(args)
        if args.command == "report":
            return _report(args)
        return _restrict(args)
    except SearchInfeasibleError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 2
    except ValidationError as exc:
        print(f"validation failure: {exc}", file=sys.stderr)
        return 1
    except (_UsageError, FormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except SmallCoversError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

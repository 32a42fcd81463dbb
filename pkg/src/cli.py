"""
Command line entry point: ``python -m src.cli <command> [options]``.

Exit status is 0 when every check passes, 1 when any check fails and 2 on
usage errors.
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

from .config.settings import settings
from .core.suite_runner import optional_param
from .core.suites import COMMANDS, COSETS, SuiteParams, run_suite

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="voa",
        description="Exact verification suites for free-field realizations in the Weyl vertex algebra",
    )
    parser.add_argument("command", choices=COMMANDS, help="suite to run")
    parser.add_argument("--ell", type=int, help=f"number of pairs l (default {settings.default_ell})")
    parser.add_argument("--max-weight", help=f"weight truncation, e.g. 3 or 5/2 (default {settings.default_max_weight})")
    parser.add_argument("--bound", type=int, help=f"classification box bound (default {settings.default_bound})")
    parser.add_argument("--type", choices=("A", "C"), default="C", help="root system type for tensor")
    parser.add_argument("--rank", type=int, help="root system rank for tensor")
    parser.add_argument("--lhs", help="left Dynkin labels, e.g. 0,1")
    parser.add_argument("--rhs", help="right Dynkin labels, e.g. 0,1")
    parser.add_argument("--coset", choices=COSETS, help="named coset for the commutant suite")
    parser.add_argument("--json", dest="json_path", help="write the JSON report to this path")
    parser.add_argument("--timings", action="store_true", help="record elapsed milliseconds in the JSON report")
    parser.add_argument("--log-level", default=settings.log_level, help="logging level (logs go to stderr)")
    return parser


def params_from_args(args: argparse.Namespace) -> SuiteParams:
    return SuiteParams(
        ell=optional_param(args.ell, settings.default_ell),
        max_weight=optional_param(args.max_weight, settings.default_max_weight),
        bound=optional_param(args.bound, settings.default_bound),
        type=args.type,
        rank=args.rank,
        lhs=args.lhs,
        rhs=args.rhs,
        coset=args.coset,
        max_columns=settings.max_fock_dimension,
    )


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE

    logging.basicConfig(
        level=getattr(logging, str(args.log_level).upper(), logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
    )

    try:
        params = params_from_args(args)
        runner = run_suite(args.command, params, record_timings=args.timings or settings.record_timings)
    except ValueError as e:
        parser.print_usage(sys.stderr)
        print(f"voa: error: {e}", file=sys.stderr)
        return EXIT_USAGE

    print(runner.render_text())

    if args.json_path:
        report = runner.report()
        text = json.dumps(report.model_dump(mode="json"), ensure_ascii=False, indent=settings.json_indent)
        Path(args.json_path).write_text(text + "\n", encoding="utf-8")
        logger.info(f"Wrote JSON report to {args.json_path}")

    return EXIT_OK if runner.passed else EXIT_FAILED


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

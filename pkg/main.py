"""
carpetcalc - K3 carpets, rational normal scrolls and their Hilbert points
Main command-line entry point
"""
import argparse
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from api import carpet, cohomology, join, lattice, sweep
from api.render import render
from lib.config import Config
from lib.errors import CarpetCalcError, InvariantViolation, UsageError

logger = logging.getLogger(__name__)

COMMANDS = (cohomology, carpet, sweep, join, lattice)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="carpetcalc",
        description="Exact cohomology, Hilbert-scheme and intersection computations for K3 carpets",
    )
    parser.add_argument("--format", choices=["json", "text", "tsv"], default="json", help="Output format")
    parser.add_argument("--out", default=None, help="Write the report to PATH instead of stdout")
    parser.add_argument("--log-level", default=None, help="Override CARPETCALC_LOG_LEVEL")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for module in COMMANDS:
        module.register(subparsers)
    return parser


def _configure_logging(level: Optional[str]) -> None:
    level = (level or Config.LOG_LEVEL).upper()
    if not isinstance(logging.getLevelName(level), int):
        raise UsageError(f"unknown log level '{level}'")
    logging.basicConfig(
        level=level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
        force=True,
    )


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 0 for --help and 2 for parse errors
        return int(e.code or 0)

    try:
        _configure_logging(args.log_level)
        Config.validate()
        doc = args.handler(args)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as f:
                f.write(render(doc, args.format, f))
            logger.info(f"wrote {args.command} report to {args.out}")
        else:
            sys.stdout.write(render(doc, args.format, sys.stdout))
    except ValidationError as e:
        # user input is parsed by the commands; anything left is an internal record
        detail = f"internal record failed validation: {e.errors()[0]['msg']}"
        logger.error(f"{args.command} failed: {detail}")
        print(f"carpetcalc: {detail}", file=sys.stderr)
        return InvariantViolation.exit_code
    except CarpetCalcError as e:
        logger.error(f"{args.command} failed: {e.detail}")
        print(f"carpetcalc: {e.detail}", file=sys.stderr)
        return e.exit_code
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

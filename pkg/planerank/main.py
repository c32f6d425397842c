"""
planerank command-line entry point.

Subcommands: exact, limits, oracle, simulate, verify. Payloads go to stdout
(or --out), diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import logging
import sys
from typing import Optional, Sequence

from pydantic import ValidationError

from planerank import __version__
from planerank.commands import exact, limits, oracle, simulate, verify
from planerank.config import settings

logger = logging.getLogger(__name__)

EXIT_USAGE = 1


class UsageError(Exception):
    """Bad command-line arguments."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="planerank",
        description="Rank statistics of random plane increasing trees",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", parser_class=_Parser)
    subparsers.required = True
    for command in (exact, limits, oracle, simulate, verify):
        command.register(subparsers)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(
        level=getattr(logging, settings.log_level, logging.WARNING),
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        args = build_parser().parse_args(argv)
        return args.handler(args)
    except (UsageError, ValueError, ValidationError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

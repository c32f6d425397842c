"""
CLI subcommands.
Each module exposes register(subparsers) and a run(args) handler returning an exit code.
"""
from __future__ import annotations

import argparse

from planerank.models.output_schemas import OutputFormat, OutputRecord
from planerank.services.export import write


def add_output_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format",
        choices=[f.value for f in OutputFormat],
        default=OutputFormat.CSV.value,
        help="Payload format (default: csv)",
    )
    parser.add_argument("--out", default=None, help="Output file (default: stdout)")


def emit_record(record: OutputRecord, args: argparse.Namespace) -> None:
    write(record, args.format, args.out)

"""`verify`: the acceptance suite."""
from __future__ import annotations

import argparse
import logging
import sys

from planerank.commands import add_output_arguments, emit_record
from planerank.graph.verify_workflow import VerifyWorkflow
from planerank.models.output_schemas import OutputRecord
from planerank.models.verify_schemas import VerificationReport, VerifyLevel
from planerank.services.export import build_meta

logger = logging.getLogger(__name__)

COLUMNS = ["criterion", "title", "status", "measured", "tolerance", "detail"]

EXIT_FAILED = 2


def build_record(report: VerificationReport, seed) -> OutputRecord:
    rows = [
        [r.criterion, r.title, "pass" if r.passed else "fail", r.measured, r.tolerance, r.detail or None]
        for r in report.results
    ]
    meta = build_meta("verify", {"level": report.level.value, "smoke": report.smoke}, seed=seed)
    return OutputRecord(meta=meta, columns=COLUMNS, rows=rows)


def run(args: argparse.Namespace) -> int:
    report = VerifyWorkflow().run(level=args.level, smoke=args.smoke, seed=args.seed)
    emit_record(build_record(report, args.seed), args)
    for r in report.results:
        print(f"{r.criterion}: {'pass' if r.passed else 'FAIL'} ({r.detail})", file=sys.stderr)
    return 0 if report.passed else EXIT_FAILED


def register(subparsers) -> None:
    parser = subparsers.add_parser("verify", help="Run the acceptance criteria")
    parser.add_argument(
        "--level",
        choices=[v.value for v in VerifyLevel],
        default=VerifyLevel.QUICK.value,
        help="quick: exact and quadrature criteria; full: adds the simulations",
    )
    parser.add_argument("--smoke", action="store_true", help="One replicate at n=1000 with wide tolerances")
    parser.add_argument("--seed", type=int, default=None, help="Master seed for the stochastic criteria")
    add_output_arguments(parser)
    parser.set_defaults(handler=run)

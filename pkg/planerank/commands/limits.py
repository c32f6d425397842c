"""`limits`: the limit constants c_k with the tail-bound check."""
from __future__ import annotations

import argparse
import logging

from planerank.commands import add_output_arguments, emit_record
from planerank.config import settings
from planerank.integrators import IntegrationMethod, list_methods
from planerank.models.output_schemas import OutputRecord
from planerank.services.export import build_meta
from planerank.services.limit_constants import (
    PUBLISHED_C,
    c1_closed_form,
    compare_methods,
    compute_limits,
    step_halving_delta,
    verify_tail,
)

logger = logging.getLogger(__name__)

COLUMNS = [
    "k", "c", "gamma", "cumulative", "tail", "bound", "holds",
    "published", "step_halving_delta", "method_difference",
]

PROVENANCE = {
    "c": "limit fraction of rank-k vertices",
    "tail": "1 - sum_{j<=k} c_j",
    "bound": "3^{k+1}/(2k+1)!",
    "published": "reported digits for k <= 3",
    "step_halving_delta": "|c_k(step) - c_k(step/2)|",
    "method_difference": "|c_k(substituted) - c_k(plain trapezoid)| at the same step",
}


def build_record(kmax: int, step: float, method: str) -> OutputRecord:
    limits = compute_limits(kmax, step, method)
    report = verify_tail(limits)
    deltas = step_halving_delta(kmax, step, method)
    comparison = compare_methods(kmax, step)

    rows = []
    for row, delta, difference in zip(report.rows, deltas, comparison.differences):
        rows.append([
            row.k,
            row.c,
            limits.gamma[row.k],
            row.cumulative,
            row.tail,
            row.bound,
            "yes" if row.holds else "no",
            PUBLISHED_C[row.k] if row.k < len(PUBLISHED_C) else None,
            delta,
            difference,
        ])

    parameters = {
        "kmax": kmax,
        "step": step,
        "method": limits.method.value,
        "grid_points": limits.grid_points,
        "c1_closed_form": c1_closed_form(),
        "methods_agree": comparison.agree,
        "method_tolerance": comparison.tolerance,
    }
    meta = build_meta("limits", parameters, provenance=PROVENANCE)
    return OutputRecord(meta=meta, columns=COLUMNS, rows=rows)


def run(args: argparse.Namespace) -> int:
    kmax = args.kmax if args.kmax is not None else settings.limits_kmax
    step = args.step if args.step is not None else settings.step
    emit_record(build_record(kmax, step, args.method), args)
    return 0


def register(subparsers) -> None:
    parser = subparsers.add_parser("limits", help="Limit constants c_k by quadrature")
    parser.add_argument("--kmax", type=int, default=None, help=f"Largest rank (default: {settings.limits_kmax})")
    parser.add_argument("--step", type=float, default=None, help=f"Grid step (default: {settings.step})")
    parser.add_argument(
        "--method",
        choices=list_methods(),
        default=IntegrationMethod.SUBSTITUTED.value,
        help="Quadrature scheme (default: substituted)",
    )
    add_output_arguments(parser)
    parser.set_defaults(handler=run)

"""`simulate`: Monte Carlo experiment report."""
from __future__ import annotations

import argparse

from planerank.commands import add_output_arguments, emit_record
from planerank.models.output_schemas import OutputRecord
from planerank.models.simulation_schemas import ExperimentConfig, ExperimentReport
from planerank.services.export import build_meta
from planerank.services.mc_simulator import run_experiment

COLUMNS = ["section", "label", "k1", "k2", "value", "se", "expected"]

PROVENANCE = {
    "rank_fraction": "mean fraction of rank-k vertices, compared with c_k",
    "ptype_count": "mean p-type rank-k count",
    "pair_joint": "joint frequency of sampled ordered pair ranks, compared with c_k1·c_k2",
    "largest_rank": "histogram of the largest rank",
    "largest_ptype_rank": "histogram of the largest p-type rank",
    "ptype_target": "p-type count at k(n) against (2n-1)/(2k+3)!!",
    "window": "replicates with the largest rank inside the window",
    "comparison": "observed against expected in standard errors",
}


def report_rows(report: ExperimentReport) -> list[list]:
    rows: list[list] = []
    top = report.config.kmax_report + 1
    for k in range(top + 1):
        rows.append(["rank_fraction", None, k, None, report.rank_fraction_mean[k], report.rank_fraction_se[k], None])
    for k in range(top + 1):
        rows.append(["ptype_count", None, k, None, report.ptype_count_mean[k], report.ptype_count_se[k], None])
    if report.pair_total:
        for k1 in range(top + 1):
            for k2 in range(top + 1):
                rows.append([
                    "pair_joint", None, k1, k2,
                    report.pair_joint[k1][k2], report.pair_joint_se[k1][k2], None,
                ])
    for rank, count in report.largest_rank_histogram.items():
        rows.append(["largest_rank", None, rank, None, count, None, None])
    for rank, count in report.largest_ptype_rank_histogram.items():
        rows.append(["largest_ptype_rank", None, rank, None, count, None, None])
    rows.append([
        "ptype_target", None, report.ptype_target_rank, None,
        report.ptype_target_mean, None, report.ptype_target_expected,
    ])
    rows.append(["window", "ratio_in_half_to_two", None, None, report.ratio_window_fraction, None, None])
    rows.append([
        "window", "rank_in_window", report.rank_window[0], report.rank_window[1],
        report.rank_window_fraction, None, None,
    ])
    rows.append(["window", "largest_dominates_ptype", None, None, int(report.largest_dominates_ptype), None, None])
    for c in report.comparisons + report.pair_comparisons:
        rows.append(["comparison", c.label, None, None, c.observed, c.standard_error, c.expected])
    return rows


def build_record(cfg: ExperimentConfig) -> OutputRecord:
    report = run_experiment(cfg)
    parameters = cfg.model_dump(mode="json")
    meta = build_meta("simulate", parameters, seed=cfg.master_seed, provenance=PROVENANCE)
    return OutputRecord(meta=meta, columns=COLUMNS, rows=report_rows(report))


def run(args: argparse.Namespace) -> int:
    cfg = ExperimentConfig(
        n=args.n,
        replicates=args.reps,
        master_seed=args.seed,
        kmax_report=args.kmax,
        pair_samples_per_tree=args.pairs,
        epsilon=args.epsilon,
    )
    emit_record(build_record(cfg), args)
    return 0


def register(subparsers) -> None:
    parser = subparsers.add_parser("simulate", help="Monte Carlo rank statistics")
    parser.add_argument("--n", type=int, default=10**5, help="Vertices per tree (default: 100000)")
    parser.add_argument("--reps", type=int, default=10, help="Replicates (default: 10)")
    parser.add_argument("--seed", type=int, default=0, help="Master seed (default: 0)")
    parser.add_argument("--pairs", type=int, default=0, help="Sampled vertex pairs per tree (default: 0)")
    parser.add_argument("--epsilon", type=float, default=0.5, help="Largest-rank window width (default: 0.5)")
    parser.add_argument("--kmax", type=int, default=6, help="Ranks above this share one bucket (default: 6)")
    add_output_arguments(parser)
    parser.set_defaults(handler=run)

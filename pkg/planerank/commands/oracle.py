"""`oracle`: exhaustive census of every tree on [n]."""
from __future__ import annotations

import argparse

from planerank.commands import add_output_arguments, emit_record
from planerank.models.output_schemas import OutputRecord
from planerank.services.export import build_meta
from planerank.services.table_store import table_store

COLUMNS = ["quantity", "k1", "k2", "value"]

PROVENANCE = {
    "tree_total": "(2n-3)!!",
    "a": "rank-k vertices over all trees",
    "b": "trees by root rank",
    "b_geq": "trees with root rank at least k",
    "ptype": "p-type vertices by rank",
    "ptype_pair": "ordered pairs of distinct p-type vertices of equal rank",
    "pair": "ordered pairs of distinct vertices by rank",
    "pi_gt": "exact chance the randomised descent path is longer than k",
}


def build_record(n: int, force: bool = False) -> OutputRecord:
    census = table_store.census(n, force=force)
    rows: list[list] = [["tree_total", None, None, census.tree_total]]
    for name in ("a", "b", "b_geq", "ptype", "ptype_pair"):
        for k, value in getattr(census, name).items():
            rows.append([name, k, None, value])
    for (k1, k2), value in census.pair.items():
        rows.append(["pair", k1, k2, value])
    for k, value in census.pi_exact.items():
        rows.append(["pi_gt", k, None, value])

    meta = build_meta("oracle", {"n": n, "force": force}, provenance=PROVENANCE)
    return OutputRecord(meta=meta, columns=COLUMNS, rows=rows)


def run(args: argparse.Namespace) -> int:
    if args.n is None:
        raise ValueError("oracle needs --n")
    emit_record(build_record(args.n, args.force), args)
    return 0


def register(subparsers) -> None:
    parser = subparsers.add_parser("oracle", help="Brute-force census over all trees on [n]")
    parser.add_argument("--n", type=int, default=None, help="Tree size (at most 9, or 10 with --force)")
    parser.add_argument("--force", action="store_true", help="Raise the size cap to 10")
    add_output_arguments(parser)
    parser.set_defaults(handler=run)

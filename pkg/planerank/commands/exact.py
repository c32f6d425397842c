"""`exact`: exact rank, root-rank, descent-path and p-type tables."""
from __future__ import annotations

import argparse
import logging
from fractions import Fraction

from planerank.commands import add_output_arguments, emit_record
from planerank.models.output_schemas import OutputRecord
from planerank.services.exact_rank_enum import tree_count
from planerank.services.export import build_meta
from planerank.services.table_store import table_store

logger = logging.getLogger(__name__)

COLUMNS = [
    "n",
    "k",
    "t",
    "a",
    "a_geq",
    "b",
    "b_geq",
    "expected_rank",
    "pi_gt",
    "root_tail",
    "ptype",
    "ptype_pair",
]

PROVENANCE = {
    "a": "rank-k vertices over all trees (leaf count (2n-1)!!/3 at k=0)",
    "b": "trees with root rank k",
    "expected_rank": "E[X_k(n)] = a/t",
    "pi_gt": "chance the randomised descent path is longer than k",
    "root_tail": "p_{>k}(n), bounded above by pi_gt",
    "ptype": "p-type rank-k vertices, (2n-1)!!/(2k+3)!! for n >= k+2",
    "ptype_pair": "ordered pairs of distinct p-type rank-k vertices",
}


def _count(value: Fraction) -> int:
    if value.denominator != 1:
        raise ValueError(f"Expected an integer count, got {value}")
    return int(value)


def build_record(nmin: int, nmax: int, kmax: int) -> OutputRecord:
    """One row per (n, k) with nmin <= n <= nmax and 0 <= k <= kmax."""
    if nmin < 1 or nmax < nmin:
        raise ValueError(f"Need 1 <= n <= nmax, got n={nmin}, nmax={nmax}")
    if kmax < 0:
        raise ValueError(f"kmax must be non-negative, got {kmax}")

    root = table_store.root_rank(kmax, nmax)
    rank = table_store.rank(kmax, nmax)
    path = table_store.path_alg(kmax, nmax)
    ptype = table_store.ptype(kmax, nmax)

    rows = []
    for n in range(nmin, nmax + 1):
        t = tree_count(n)
        for k in range(kmax + 1):
            a = _count(rank.count(k, n))
            rows.append([
                n,
                k,
                t,
                a,
                _count(rank.count_geq(k, n)),
                _count(root.count(k, n)),
                _count(root.count_geq(k, n)),
                Fraction(a, t),
                path.pi[(k, n)],
                root.count_geq(k + 1, n) / t,
                _count(ptype.count(k, n)),
                _count(ptype.pair_count(k, n)),
            ])

    meta = build_meta("exact", {"n": nmin, "nmax": nmax, "kmax": kmax}, provenance=PROVENANCE)
    return OutputRecord(meta=meta, columns=COLUMNS, rows=rows)


def run(args: argparse.Namespace) -> int:
    if args.n is None and args.nmax is None:
        raise ValueError("exact needs --n or --nmax")
    if args.nmax is None:
        nmin = nmax = args.n
    else:
        nmin = args.n if args.n is not None else 1
        nmax = args.nmax
    kmax = args.kmax if args.kmax is not None else max(0, nmax - 1)
    emit_record(build_record(nmin, nmax, kmax), args)
    return 0


def register(subparsers) -> None:
    parser = subparsers.add_parser("exact", help="Exact rank tables from the generating functions")
    parser.add_argument("--n", type=int, default=None, help="Single tree size, or the first size with --nmax")
    parser.add_argument("--nmax", type=int, default=None, help="Largest tree size")
    parser.add_argument("--kmax", type=int, default=None, help="Largest rank (default: nmax-1)")
    add_output_arguments(parser)
    parser.set_defaults(handler=run)

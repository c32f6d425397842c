"""
Monte Carlo Simulator

Grows random plane increasing trees by preferential attachment and collects
rank statistics far beyond the reach of the exact series.

Growth uses a slot array: with m vertices it lists the root deg+1 times and
every other vertex deg times, 2m-1 entries in all. A uniform entry picks the
host of vertex m+1 with probability proportional to its number of gaps; a
second uniform draw picks one of the host's gaps, so every one of the 2m-1
gaps is equally likely.

Seeding: replicate r of an experiment with master seed s draws its tree from
SeedSequence(s, spawn_key=(r,)) and its vertex pairs from
SeedSequence(s, spawn_key=(r, 1)). Results depend only on (s, r).
"""
from __future__ import annotations

import logging
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from typing import Optional

import numpy as np
from scipy.stats import chisquare

from planerank.config import settings
from planerank.models.limit_schemas import LimitConstants
from planerank.models.oracle_schemas import PlaneTree
from planerank.models.simulation_schemas import (
    ExperimentConfig,
    ExperimentReport,
    LimitComparison,
    ReplicateResult,
    SlotArray,
    UniformityResult,
)
from planerank.services.brute_force_oracle import enumerate_trees
from planerank.services.exact_rank_enum import expected_ptype_count, largest_rank_window
from planerank.services.limit_constants import compute_limits

logger = logging.getLogger(__name__)

RATIO_WINDOW = (0.5, 2.0)
PAIR_KMAX = 2
RANK_COMPARE_KMAX = 3
SE_MULTIPLIER = 3.0


# ============================================
# Seeds and draws
# ============================================

def replicate_seed(master_seed: int, index: int) -> int:
    """64-bit seed of replicate `index`."""
    state = np.random.SeedSequence(master_seed, spawn_key=(index,)).generate_state(1, np.uint64)
    return int(state[0])


def _pair_rng(master_seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(master_seed, spawn_key=(index, 1)))


def _slot_indices(rng: np.random.Generator, n: int) -> np.ndarray:
    """Entry of the slot array drawn for m = 2..n; the array then has 2m-3 entries."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    highs = 2 * np.arange(2, n + 1, dtype=np.int64) - 3
    return rng.integers(0, highs)


# ============================================
# Tree growth
# ============================================

def _grow_plane(n: int, indices, uniforms) -> tuple[PlaneTree, SlotArray]:
    slots = SlotArray.for_size(n)
    parent = [0] * (n + 1)
    children: list[list[int]] = [[] for _ in range(n + 1)]
    for m in range(2, n + 1):
        host = int(slots.slots[indices[m - 2]])
        kids = children[host]
        kids.insert(int(uniforms[m - 2] * (len(kids) + 1)), m)
        parent[m] = host
        slots.slots[2 * m - 3] = host
        slots.slots[2 * m - 2] = m
        slots.m = m
    tree = PlaneTree(n=n, parent=tuple(parent), children=tuple(tuple(c) for c in children))
    return tree, slots


def grow_tree_with_slots(n: int, seed: int) -> tuple[PlaneTree, SlotArray]:
    """grow_tree together with its final slot array of 2n-1 entries."""
    if n < 1:
        raise ValueError(f"grow_tree needs n >= 1, got n={n}")
    rng = np.random.default_rng(seed)
    indices = _slot_indices(rng, n)
    uniforms = rng.random(max(0, n - 1))
    return _grow_plane(n, indices.tolist(), uniforms.tolist())


def grow_tree(n: int, seed: int) -> PlaneTree:
    """One random plane increasing tree on [n], fixed by seed."""
    return grow_tree_with_slots(n, seed)[0]


def grow_parents(n: int, seed: int) -> np.ndarray:
    """
    Parent array (index 0 unused, parent[1] = 0) of the tree grow_tree(n, seed) builds.

    Entry 2j-2 of the slot array is j and entry 2j-3 is the parent of j, so an
    even drawn index names the host directly and an odd one defers to the
    parent of an earlier vertex. Deferred hosts are resolved by chasing those
    references for all vertices at once.
    """
    if n < 1:
        raise ValueError(f"grow_parents needs n >= 1, got n={n}")
    rng = np.random.default_rng(seed)
    idx = _slot_indices(rng, n)

    parent = np.zeros(n + 1, dtype=np.int64)
    if n == 1:
        return parent
    labels = np.arange(2, n + 1)
    odd = (idx & 1).astype(bool)
    parent[labels[~odd]] = idx[~odd] // 2 + 1

    defer = np.zeros(n + 1, dtype=np.int64)
    defer[labels[odd]] = (idx[odd] + 3) // 2

    pending = labels[odd]
    refs = defer[pending]
    while pending.size:
        done = parent[refs] > 0
        parent[pending[done]] = parent[refs[done]]
        pending = pending[~done]
        refs = defer[refs[~done]]
    return parent


# ============================================
# Ranks and p-type flags
# ============================================

def compute_ranks(tree: PlaneTree) -> list[int]:
    """rank[v] for v = 1..n (index 0 unused); one sweep from the largest label down."""
    rank = [0] * (tree.n + 1)
    for v in range(tree.n, 0, -1):
        kids = tree.children[v]
        rank[v] = 1 + min(rank[c] for c in kids) if kids else 0
    return rank


def ptype_flags(tree: PlaneTree) -> list[bool]:
    """flag[v] is True when v's subtree is one descending path."""
    flag = [False] * (tree.n + 1)
    for v in range(tree.n, 0, -1):
        kids = tree.children[v]
        flag[v] = not kids or (len(kids) == 1 and flag[kids[0]])
    return flag


def ranks_from_parents(parent: np.ndarray) -> np.ndarray:
    """
    Ranks from a parent array by relaxation: leaves start at 0, every other
    vertex at 1 + min over its children. Converges after largest-rank + 1 rounds.
    """
    n = parent.size - 1
    rank = np.zeros(n + 1, dtype=np.int64)
    if n <= 1:
        return rank
    kids = parent[2:]
    child_count = np.bincount(kids, minlength=n + 1)
    internal = child_count > 0
    internal[0] = False
    big = np.iinfo(np.int64).max // 2
    rank[internal] = big
    while True:
        best = np.full(n + 1, big, dtype=np.int64)
        np.minimum.at(best, kids, rank[2:] + 1)
        updated = np.where(internal, best, 0)
        updated[0] = 0
        if np.array_equal(updated, rank):
            return rank
        rank = updated


def ptype_from_parents(parent: np.ndarray) -> np.ndarray:
    """Boolean p-type flags from a parent array."""
    n = parent.size - 1
    flag = np.zeros(n + 1, dtype=bool)
    if n == 0:
        return flag
    child_count = np.bincount(parent[2:], minlength=n + 1) if n > 1 else np.zeros(n + 1, dtype=np.int64)
    flag[1:] = child_count[1:] == 0
    single = child_count == 1
    frontier = np.flatnonzero(flag)
    while frontier.size:
        up = parent[frontier]
        up = up[(up > 0) & single[up]]
        up = up[~flag[up]]
        flag[up] = True
        frontier = up
    return flag


# ============================================
# Replicates
# ============================================

def ptype_target_rank(n: int, epsilon: float) -> int:
    """k(n) = ceil((1-eps) log n / log log n); 0 when n < 3."""
    if n < 3:
        return 0
    return largest_rank_window(n, epsilon)[0]


def run_replicate(cfg: ExperimentConfig, index: int) -> ReplicateResult:
    """Grow one tree and census it."""
    seed = replicate_seed(cfg.master_seed, index)
    parent = grow_parents(cfg.n, seed)
    rank = ranks_from_parents(parent)[1:]
    flags = ptype_from_parents(parent)[1:]

    top = cfg.kmax_report + 1
    bucket = np.minimum(rank, top)
    rank_counts = np.bincount(bucket, minlength=top + 1)
    ptype_counts = np.bincount(bucket[flags], minlength=top + 1)
    if int(rank_counts.sum()) != cfg.n:
        raise RuntimeError(f"Rank census of replicate {index} does not add up to n={cfg.n}")

    target = ptype_target_rank(cfg.n, cfg.epsilon)
    ptype_target = int(np.count_nonzero(rank[flags] == target))

    pair_counts = np.zeros((top + 1, top + 1), dtype=np.int64)
    samples = cfg.pair_samples_per_tree if cfg.n >= 2 else 0
    if samples:
        rng = _pair_rng(cfg.master_seed, index)
        first = rng.integers(0, cfg.n, size=samples)
        second = rng.integers(0, cfg.n - 1, size=samples)
        second += second >= first
        joint = bucket[first] * (top + 1) + bucket[second]
        pair_counts = np.bincount(joint, minlength=(top + 1) ** 2).reshape(top + 1, top + 1)

    return ReplicateResult(
        index=index,
        seed=seed,
        rank_counts=rank_counts.tolist(),
        ptype_counts=ptype_counts.tolist(),
        ptype_target_count=ptype_target,
        largest_rank=int(rank.max()),
        largest_ptype_rank=int(rank[flags].max()),
        pair_counts=pair_counts.tolist(),
        pair_samples=samples,
    )


def _run_replicate_args(args: tuple[ExperimentConfig, int]) -> ReplicateResult:
    return run_replicate(*args)


def _mean_and_se(values: np.ndarray, fallback_trials: int) -> tuple[np.ndarray, np.ndarray]:
    """
    Column means and standard errors of per-replicate proportions.
    A single replicate falls back to the binomial sqrt(p(1-p)/trials), with p
    smoothed to (x+1)/(trials+2) so an unobserved cell keeps a non-zero error.
    """
    mean = values.mean(axis=0)
    if values.shape[0] > 1:
        se = values.std(axis=0, ddof=1) / math.sqrt(values.shape[0])
    else:
        trials = max(1, fallback_trials)
        smoothed = (mean * trials + 1.0) / (trials + 2.0)
        se = np.sqrt(smoothed * (1.0 - smoothed) / trials)
    return mean, se


def _compare(label: str, observed: float, se: float, expected: float) -> LimitComparison:
    gap = observed - expected
    z = gap / se if se > 0 else (0.0 if gap == 0 else math.copysign(math.inf, gap))
    return LimitComparison(
        label=label,
        observed=float(observed),
        standard_error=float(se),
        expected=float(expected),
        z_score=float(z),
        within=bool(abs(z) <= SE_MULTIPLIER),
    )


def run_experiment(
    cfg: ExperimentConfig,
    limits: Optional[LimitConstants] = None,
    threads: Optional[int] = None,
) -> ExperimentReport:
    """
    Run cfg.replicates independent trees and aggregate.

    Replicates may run on a process pool (settings.threads); results are
    collected in replicate order, so the report does not depend on scheduling.
    """
    threads = settings.threads if threads is None else threads
    logger.info(
        "Starting experiment",
        extra={"n": cfg.n, "replicates": cfg.replicates, "seed": cfg.master_seed, "threads": threads},
    )
    jobs = [(cfg, r) for r in range(cfg.replicates)]
    if threads > 1 and cfg.replicates > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_run_replicate_args, jobs))
    else:
        results = [_run_replicate_args(job) for job in jobs]

    return aggregate(cfg, results, limits)


def aggregate(
    cfg: ExperimentConfig,
    results: list[ReplicateResult],
    limits: Optional[LimitConstants] = None,
) -> ExperimentReport:
    """Fold replicate results (in index order) into an ExperimentReport."""
    results = sorted(results, key=lambda r: r.index)
    n = cfg.n
    top = cfg.kmax_report + 1

    fractions = np.asarray([r.rank_counts for r in results], dtype=float) / n
    frac_mean, frac_se = _mean_and_se(fractions, n)

    ptype_frac = np.asarray([r.ptype_counts for r in results], dtype=float) / n
    ptype_mean, ptype_se = _mean_and_se(ptype_frac, n)

    target_rank = ptype_target_rank(n, cfg.epsilon)
    target_mean = float(np.mean([r.ptype_target_count for r in results]))
    target_expected = float(expected_ptype_count(target_rank, n))

    largest = [r.largest_rank for r in results]
    largest_p = [r.largest_ptype_rank for r in results]

    ratios: list[float] = []
    ratio_fraction = 0.0
    window = [0, 0]
    window_fraction = 0.0
    if n >= 3:
        scale = math.log(n) / math.log(math.log(n))
        ratios = [r / scale for r in largest]
        ratio_fraction = sum(RATIO_WINDOW[0] <= x <= RATIO_WINDOW[1] for x in ratios) / len(ratios)
        lower, upper = largest_rank_window(n, cfg.epsilon)
        window = [lower, upper]
        window_fraction = sum(lower <= r <= upper for r in largest) / len(largest)

    pair_total = sum(r.pair_samples for r in results)
    if pair_total:
        per_rep = np.asarray(
            [np.asarray(r.pair_counts, dtype=float) / r.pair_samples for r in results if r.pair_samples]
        )
        pair_mean, pair_se = _mean_and_se(per_rep, pair_total)
    else:
        pair_mean = np.zeros((top + 1, top + 1))
        pair_se = np.zeros((top + 1, top + 1))

    if limits is None:
        limits = compute_limits(min(cfg.kmax_report, RANK_COMPARE_KMAX), settings.step)

    comparisons = [
        _compare(f"rank{k}_vs_c{k}", frac_mean[k], frac_se[k], limits.c[k])
        for k in range(min(RANK_COMPARE_KMAX, cfg.kmax_report, limits.kmax) + 1)
    ]
    comparisons.append(_compare("rank0_vs_exact", frac_mean[0], frac_se[0], (2 * n - 1) / (3 * n)))

    pair_comparisons = []
    if pair_total:
        kmax_pairs = min(PAIR_KMAX, cfg.kmax_report, limits.kmax)
        for k1 in range(kmax_pairs + 1):
            for k2 in range(kmax_pairs + 1):
                pair_comparisons.append(
                    _compare(
                        f"pair{k1}{k2}_vs_c{k1}c{k2}",
                        pair_mean[k1, k2],
                        pair_se[k1, k2],
                        limits.c[k1] * limits.c[k2],
                    )
                )

    report = ExperimentReport(
        config=cfg,
        rank_fraction_mean=frac_mean.tolist(),
        rank_fraction_se=frac_se.tolist(),
        ptype_count_mean=(ptype_mean * n).tolist(),
        ptype_count_se=(ptype_se * n).tolist(),
        ptype_target_rank=target_rank,
        ptype_target_mean=target_mean,
        ptype_target_expected=target_expected,
        largest_rank_histogram=dict(sorted(Counter(largest).items())),
        largest_ptype_rank_histogram=dict(sorted(Counter(largest_p).items())),
        largest_rank_ratios=ratios,
        ratio_window_fraction=ratio_fraction,
        rank_window=window,
        rank_window_fraction=window_fraction,
        largest_dominates_ptype=all(a >= b for a, b in zip(largest, largest_p)),
        pair_joint=pair_mean.tolist(),
        pair_joint_se=pair_se.tolist(),
        pair_total=pair_total,
        comparisons=comparisons,
        pair_comparisons=pair_comparisons,
    )
    logger.info("Experiment aggregated", extra={"n": n, "replicates": len(results)})
    return report


# ============================================
# Uniformity
# ============================================

def uniformity_test(n: int, samples: int, seed: int) -> UniformityResult:
    """Chi-square test of grow_tree's law against the uniform law on all (2n-3)!! trees."""
    if samples < 1:
        raise ValueError(f"samples must be positive, got {samples}")
    order: list[tuple] = []
    enumerate_trees(n, lambda tree: order.append(tree.key()))
    position = {key: i for i, key in enumerate(order)}

    rng = np.random.default_rng(seed)
    steps = max(0, n - 1)
    if steps:
        highs = 2 * np.arange(2, n + 1, dtype=np.int64) - 3
        indices = rng.integers(0, highs, size=(samples, steps)).tolist()
        uniforms = rng.random((samples, steps)).tolist()
    else:
        indices = uniforms = [[] for _ in range(samples)]

    frequencies = [0] * len(order)
    for idx_row, u_row in zip(indices, uniforms):
        frequencies[position[_grow_plane(n, idx_row, u_row)[0].key()]] += 1

    if len(order) > 1:
        statistic, p_value = chisquare(frequencies)
    else:
        statistic, p_value = 0.0, 1.0
    logger.info("Uniformity test done", extra={"n": n, "samples": samples, "p_value": float(p_value)})
    return UniformityResult(
        n=n,
        samples=samples,
        trees=len(order),
        statistic=float(statistic),
        p_value=float(p_value),
        frequencies=frequencies,
    )

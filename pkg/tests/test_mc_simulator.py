import warnings
from collections import Counter

import numpy as np
import pytest
from pydantic import ValidationError

from planerank.models.oracle_schemas import PlaneTree
from planerank.models.simulation_schemas import ExperimentConfig, SlotArray
from planerank.services.brute_force_oracle import enumerate_trees
from planerank.services.mc_simulator import (
    compute_ranks,
    grow_parents,
    grow_tree,
    grow_tree_with_slots,
    ptype_flags,
    ptype_from_parents,
    ptype_target_rank,
    ranks_from_parents,
    replicate_seed,
    run_experiment,
    run_replicate,
    uniformity_test,
)


def build(children: dict[int, list[int]], n: int) -> PlaneTree:
    parent = [0] * (n + 1)
    kids = [[] for _ in range(n + 1)]
    for v, cs in children.items():
        kids[v] = list(cs)
        for c in cs:
            parent[c] = v
    return PlaneTree(n=n, parent=tuple(parent), children=tuple(tuple(c) for c in kids))


class TestSlotArray:
    def test_starts_with_root(self):
        slots = SlotArray.for_size(5)
        assert slots.size == 1
        assert slots.live().tolist() == [1]
        assert slots.slots.size == 9

    @pytest.mark.parametrize("n, seed", [(1, 0), (2, 3), (9, 4), (400, 12)])
    def test_final_length(self, n, seed):
        _, slots = grow_tree_with_slots(n, seed)
        assert slots.m == n
        assert slots.size == 2 * n - 1
        assert slots.live().size == 2 * n - 1

    @pytest.mark.parametrize("n, seed", [(2, 1), (12, 8), (500, 21)])
    def test_multiplicity_is_degree(self, n, seed):
        tree, slots = grow_tree_with_slots(n, seed)
        occurrences = np.bincount(slots.live(), minlength=n + 1)
        assert occurrences[1] == len(tree.children[1]) + 1
        for v in range(2, n + 1):
            assert occurrences[v] == len(tree.children[v]) + 1

    def test_slot_growth_matches_plain_growth(self):
        tree, _ = grow_tree_with_slots(300, 5)
        assert tree == grow_tree(300, 5)


class TestGrowth:
    @pytest.mark.parametrize("seed", [0, 1, 99])
    def test_tiny_trees(self, seed):
        assert grow_tree(1, seed).n == 1
        assert grow_tree(2, seed).parent[2] == 1

    def test_rejects_empty_tree(self):
        with pytest.raises(ValueError):
            grow_tree(0, 1)

    def test_deterministic(self):
        assert grow_tree(200, 7) == grow_tree(200, 7)

    def test_increasing_labels(self):
        tree = grow_tree(300, 3)
        assert all(tree.parent[v] < v for v in range(2, 301))

    @pytest.mark.parametrize("n, seed", [(1, 0), (2, 5), (7, 11), (50, 1), (2000, 42)])
    def test_parent_array_matches_tree(self, n, seed):
        assert grow_parents(n, seed).tolist() == list(grow_tree(n, seed).parent)


class TestRanks:
    def test_path(self):
        tree = build({1: [2], 2: [3], 3: [4]}, 4)
        assert compute_ranks(tree)[1:] == [3, 2, 1, 0]
        assert all(ptype_flags(tree)[1:])

    def test_star(self):
        tree = build({1: [2, 3, 4, 5]}, 5)
        assert compute_ranks(tree)[1:] == [1, 0, 0, 0, 0]
        flags = ptype_flags(tree)
        assert not flags[1]
        assert all(flags[2:])

    def test_three_vertex_census(self):
        ranks: Counter = Counter()
        ptype: Counter = Counter()

        def visit(tree):
            r = compute_ranks(tree)
            f = ptype_flags(tree)
            for v in range(1, tree.n + 1):
                ranks[r[v]] += 1
                if f[v]:
                    ptype[r[v]] += 1

        enumerate_trees(3, visit)
        assert ranks == Counter({0: 5, 1: 3, 2: 1})
        assert ptype == Counter({0: 5, 1: 1, 2: 1})

    @pytest.mark.parametrize("seed", [2, 3, 4])
    def test_vectorised_matches_sweep(self, seed):
        tree = grow_tree(1500, seed)
        parent = grow_parents(1500, seed)
        assert ranks_from_parents(parent).tolist() == compute_ranks(tree)
        assert ptype_from_parents(parent).tolist()[1:] == ptype_flags(tree)[1:]

    def test_single_vertex(self):
        parent = grow_parents(1, 0)
        assert ranks_from_parents(parent).tolist() == [0, 0]
        assert ptype_from_parents(parent).tolist() == [False, True]


class TestReplicates:
    def test_replicate_seed(self):
        assert replicate_seed(5, 0) == replicate_seed(5, 0)
        assert replicate_seed(5, 0) != replicate_seed(5, 1)
        assert 0 <= replicate_seed(5, 3) < 2**64

    def test_census_adds_up(self):
        cfg = ExperimentConfig(n=3000, replicates=1, master_seed=9, pair_samples_per_tree=50)
        result = run_replicate(cfg, 0)
        assert sum(result.rank_counts) == 3000
        assert len(result.rank_counts) == cfg.kmax_report + 2
        assert result.largest_rank >= result.largest_ptype_rank
        assert sum(map(sum, result.pair_counts)) == 50

    def test_ptype_target_rank(self):
        assert ptype_target_rank(10**6, 0.5) == 3
        assert ptype_target_rank(2, 0.5) == 0

    @pytest.mark.parametrize(
        "fields",
        [{"n": 0, "replicates": 1, "master_seed": 0}, {"n": 5, "replicates": 0, "master_seed": 0},
         {"n": 5, "replicates": 1, "master_seed": -1}, {"n": 5, "replicates": 1, "master_seed": 0, "epsilon": 1.0}],
    )
    def test_config_validation(self, fields):
        with pytest.raises(ValidationError):
            ExperimentConfig(**fields)


class TestExperiment:
    def test_deterministic_and_schedule_independent(self, coarse_limits):
        cfg = ExperimentConfig(n=500, replicates=4, master_seed=123, pair_samples_per_tree=20)
        serial = run_experiment(cfg, limits=coarse_limits, threads=1)
        again = run_experiment(cfg, limits=coarse_limits, threads=1)
        pooled = run_experiment(cfg, limits=coarse_limits, threads=2)
        assert serial == again == pooled

    def test_report_contents(self, coarse_limits):
        cfg = ExperimentConfig(n=20000, replicates=5, master_seed=2024, pair_samples_per_tree=200)
        report = run_experiment(cfg, limits=coarse_limits, threads=1)

        assert sum(report.rank_fraction_mean) == pytest.approx(1.0)
        assert sum(report.largest_rank_histogram.values()) == 5
        assert report.largest_dominates_ptype
        assert report.pair_total == 1000
        assert [c.label for c in report.comparisons] == [
            "rank0_vs_c0", "rank1_vs_c1", "rank2_vs_c2", "rank3_vs_c3", "rank0_vs_exact",
        ]
        assert len(report.pair_comparisons) == 9
        exact = next(c for c in report.comparisons if c.label == "rank0_vs_exact")
        assert exact.expected == pytest.approx((2 * 20000 - 1) / (3 * 20000))
        assert abs(exact.z_score) < 6

    def test_leaf_fraction_single_replicate(self, coarse_limits):
        cfg = ExperimentConfig(n=50000, replicates=1, master_seed=77)
        report = run_experiment(cfg, limits=coarse_limits, threads=1)
        assert report.rank_fraction_mean[0] == pytest.approx(2 / 3, abs=0.01)
        assert report.rank_fraction_se[0] > 0
        assert report.pair_total == 0
        assert report.pair_comparisons == []

    def test_comparison_flags_are_plain_bools(self, coarse_limits):
        cfg = ExperimentConfig(n=800, replicates=2, master_seed=31, pair_samples_per_tree=40)
        with warnings.catch_warnings():
            warnings.simplefilter("error", DeprecationWarning)
            report = run_experiment(cfg, limits=coarse_limits, threads=1)
        for comparison in report.comparisons + report.pair_comparisons:
            assert type(comparison.within) is bool

    def test_small_tree_has_no_window(self, coarse_limits):
        report = run_experiment(ExperimentConfig(n=2, replicates=2, master_seed=0), limits=coarse_limits)
        assert report.largest_rank_ratios == []
        assert report.rank_window == [0, 0]


class TestUniformity:
    def test_four_vertices(self):
        result = uniformity_test(4, 30000, seed=5)
        assert result.trees == 15
        assert sum(result.frequencies) == 30000
        assert result.p_value > 1e-4

    def test_five_vertices(self):
        result = uniformity_test(5, 50000, seed=6)
        assert result.trees == 105
        assert result.p_value > 1e-4

    def test_single_vertex(self):
        result = uniformity_test(1, 10, seed=0)
        assert result.frequencies == [10]
        assert result.p_value == 1.0

    def test_samples_must_be_positive(self):
        with pytest.raises(ValueError):
            uniformity_test(3, 0, seed=0)

    @pytest.mark.slow
    def test_full_size_sample(self):
        assert uniformity_test(4, 10**6, seed=20240917).p_value > 1e-3

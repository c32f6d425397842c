from fractions import Fraction

import pytest

from planerank.services.brute_force_oracle import (
    census_all,
    count_shapes,
    decode_slots,
    enumerate_trees,
    tree_shape,
)
from planerank.services.exact_rank_enum import double_factorial, tree_count


class TestEnumeration:
    @pytest.mark.parametrize("n", range(1, 8))
    def test_visit_count(self, n):
        assert enumerate_trees(n, lambda tree: None) == tree_count(n)

    @pytest.mark.parametrize("n", [4, 6])
    def test_each_tree_once(self, n):
        keys = []
        enumerate_trees(n, lambda tree: keys.append(tree.key()))
        assert len(set(keys)) == len(keys) == tree_count(n)

    def test_labels_increase_downwards(self):
        def check(tree):
            for v in range(2, tree.n + 1):
                assert tree.parent[v] < v
                assert v in tree.children[tree.parent[v]]

        enumerate_trees(5, check)

    def test_prefix_restricts(self):
        assert enumerate_trees(5, lambda tree: None, prefix=(1, 3)) == 5 * 7

    @pytest.mark.parametrize("n, force", [(0, False), (10, False), (11, True)])
    def test_cap(self, n, force):
        with pytest.raises(ValueError):
            enumerate_trees(n, lambda tree: None, force=force)


class TestDecodeSlots:
    def test_single_edge(self):
        tree = decode_slots((1,))
        assert tree.parent[2] == 1

    def test_left_insertion(self):
        tree = decode_slots((1, 1))
        assert tuple(tree.children[1]) == (3, 2)

    def test_right_insertion(self):
        tree = decode_slots((1, 2))
        assert tuple(tree.children[1]) == (2, 3)

    def test_path(self):
        tree = decode_slots((1, 3))
        assert tree.parent[3] == 2
        assert tree.leaves() == [3]

    def test_bad_slot(self):
        with pytest.raises(ValueError):
            decode_slots((1, 4))

    def test_matches_enumeration_order(self):
        trees = []
        enumerate_trees(3, lambda tree: trees.append(tree.key()))
        assert trees == [decode_slots((1, s)).key() for s in (1, 2, 3)]


class TestShapes:
    def test_shape_of_path(self):
        assert tree_shape(decode_slots((1, 3, 5))) == ((((),),),)

    def test_star_orders_share_a_shape(self):
        assert tree_shape(decode_slots((1, 1))) == tree_shape(decode_slots((1, 2)))

    def test_shape_counts_sum_to_tree_count(self):
        assert sum(count_shapes(6).values()) == tree_count(6)


class TestCensus:
    @pytest.fixture(scope="class")
    def three(self):
        return census_all(3)

    def test_three_vertices(self, three):
        assert three.tree_total == 3
        assert three.a == {0: 5, 1: 3, 2: 1}
        assert three.b == {0: 0, 1: 2, 2: 1}
        assert three.ptype == {0: 5, 1: 1, 2: 1}
        assert three.ptype_pair[0] == 4
        assert three.pi_exact[1] == Fraction(1, 3)

    def test_leaf_count_at_six(self):
        assert census_all(6).a[0] == double_factorial(11) // 3 == 3465

    def test_single_vertex(self):
        census = census_all(1)
        assert census.tree_total == 1
        assert census.a == {0: 1}
        assert census.pi_exact[0] == 0

    @pytest.mark.parametrize("n", [4, 5, 6])
    def test_totals(self, n):
        census = census_all(n)
        assert census.tree_total == tree_count(n)
        assert sum(census.a.values()) == n * census.tree_total
        assert sum(census.b.values()) == census.tree_total
        assert sum(census.pair.values()) == n * (n - 1) * census.tree_total
        for (k1, k2), value in census.pair.items():
            assert census.pair[(k2, k1)] == value

    def test_descent_path_law(self):
        census = census_all(6)
        for k in range(-1, 5):
            assert census.pi_exact[k + 1] <= census.pi_exact[k]
        for k in range(6):
            assert census.pi_exact[k] >= Fraction(census.b_geq[k + 1], census.tree_total)

    def test_parallel_parts_merge_to_same_census(self):
        assert census_all(5, threads=2) == census_all(5, threads=1)

import pytest

from planerank.integrators import IntegrationMethod
from planerank.services.limit_constants import (
    DISAGREEMENT_FACTOR,
    PUBLISHED_C,
    PUBLISHED_TAIL_AFTER_3,
    TOLERANCE_FLOOR,
    c1_closed_form,
    compare_methods,
    compute_limits,
    published_constants,
    step_halving_delta,
    tail_bound,
    verify_tail,
)
from planerank.services.exact_rank_enum import expected_rank_count
from planerank.services.table_store import table_store


class TestClosedForms:
    def test_c1_closed_form(self):
        assert c1_closed_form() == pytest.approx(0.2938858406, abs=1e-10)
        assert 0 < c1_closed_form() < 2 / 3

    def test_tail_bound(self):
        assert tail_bound(3) == pytest.approx(81 / 5040)
        assert tail_bound(0) == 3.0

    def test_published(self):
        values = published_constants()
        assert values["c3"] == PUBLISHED_C[3]
        assert values["tail_after_3"] == PUBLISHED_TAIL_AFTER_3


class TestComputeLimits:
    def test_c0(self, coarse_limits):
        assert coarse_limits.c[0] == pytest.approx(2 / 3, abs=1e-10)

    def test_c1_matches_closed_form(self, coarse_limits):
        assert coarse_limits.c[1] == pytest.approx(c1_closed_form(), abs=1e-8)

    @pytest.mark.parametrize("k", [2, 3])
    def test_published_digits(self, coarse_limits, k):
        assert coarse_limits.c[k] == pytest.approx(PUBLISHED_C[k], abs=1e-8)

    def test_gamma_is_half(self, coarse_limits):
        assert coarse_limits.gamma == pytest.approx([c / 2 for c in coarse_limits.c])

    def test_positive_and_decreasing(self, coarse_limits):
        c = coarse_limits.c
        assert all(x > 0 for x in c)
        assert all(a > b for a, b in zip(c, c[1:]))

    def test_cumulative_below_one(self, coarse_limits):
        for k in range(coarse_limits.kmax + 1):
            assert coarse_limits.cumulative(k) < 1

    def test_default_method(self, coarse_limits):
        assert coarse_limits.method is IntegrationMethod.SUBSTITUTED

    @pytest.mark.parametrize("step", [0.0, -1e-6, 2e-3])
    def test_bad_step(self, step):
        with pytest.raises(ValueError):
            compute_limits(3, step)

    def test_negative_kmax(self):
        with pytest.raises(ValueError):
            compute_limits(-1, 1e-4)

    def test_unknown_method(self):
        with pytest.raises(ValueError):
            compute_limits(2, 1e-4, "simpson")

    @pytest.mark.slow
    def test_default_step(self):
        limits = compute_limits(3, 1e-6)
        assert limits.c[3] == pytest.approx(PUBLISHED_C[3], abs=1e-8)
        assert limits.tail(3) == pytest.approx(PUBLISHED_TAIL_AFTER_3, abs=1e-8)


class TestTail:
    def test_bound_holds(self, coarse_limits):
        report = verify_tail(coarse_limits)
        assert report.all_hold
        assert [row.k for row in report.rows] == list(range(7))

    def test_tail_after_three(self, coarse_limits):
        report = verify_tail(coarse_limits)
        assert report.tail_after_3 == pytest.approx(PUBLISHED_TAIL_AFTER_3, abs=1e-8)
        assert report.tail_after_3_error < 1e-8

    def test_short_table_has_no_tail_after_three(self):
        report = verify_tail(compute_limits(2, 1e-4))
        assert report.tail_after_3 is None


class TestStability:
    def test_step_halving(self):
        deltas = step_halving_delta(4, 1e-5)
        assert len(deltas) == 5
        assert max(deltas) < 1e-8

    def test_methods_agree(self):
        comparison = compare_methods(3, 1e-5, tolerance=1e-6)
        assert comparison.agree
        assert len(comparison.differences) == 4

    @pytest.mark.slow
    def test_methods_agree_at_fine_step(self):
        comparison = compare_methods(6, 1e-6, tolerance=1e-7)
        assert comparison.agree
        assert max(comparison.differences) <= 1e-7

    def test_default_tolerance_follows_discretization_error(self):
        comparison = compare_methods(3, 1e-5)
        assert comparison.plain_step_delta is not None
        assert comparison.tolerance == pytest.approx(
            max(DISAGREEMENT_FACTOR * comparison.plain_step_delta, TOLERANCE_FLOOR)
        )
        assert comparison.agree

    def test_explicit_tolerance_skips_halving(self):
        comparison = compare_methods(2, 1e-4, tolerance=1e-3)
        assert comparison.plain_step_delta is None
        assert comparison.tolerance == 1e-3

    def test_disagreement_is_reported_not_raised(self, caplog):
        comparison = compare_methods(2, 1e-3, tolerance=1e-15)
        assert not comparison.agree
        assert "disagree" in caplog.text


class TestConvergence:
    @pytest.mark.slow
    def test_finite_n_fractions_approach_limits(self, coarse_limits):
        table = table_store.rank(3, 200)
        for n in (50, 100, 200):
            for k in range(4):
                gap = abs(float(expected_rank_count(k, n, table)) / n - coarse_limits.c[k])
                assert gap * n <= 10.0

    def test_leaf_fraction_gap_is_one_third_over_n(self, fresh_store, coarse_limits):
        n = 40
        table = fresh_store.rank(0, n)
        gap = float(expected_rank_count(0, n, table)) / n - coarse_limits.c[0]
        assert gap == pytest.approx(-1 / (3 * n), abs=1e-9)

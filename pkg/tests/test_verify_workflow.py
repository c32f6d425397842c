from fractions import Fraction

import pytest

from planerank.graph import VerifyWorkflow, verify_graph
from planerank.graph import verify_nodes
from planerank.models.verify_schemas import VerifyLevel


class TestGraph:
    def test_nodes(self):
        nodes = set(verify_graph.get_graph().nodes)
        for name in (
            "check_exact_leaves",
            "check_oracle_agreement",
            "check_limit_constants",
            "check_tail_bound",
            "check_finite_inequalities",
            "check_convergence",
            "check_uniformity",
            "check_rank_fractions",
            "check_pair_independence",
            "check_largest_rank",
        ):
            assert name in nodes

    @pytest.mark.parametrize("level, expected", [(VerifyLevel.QUICK, "end"), (VerifyLevel.FULL, "check_uniformity")])
    def test_route_after_quick(self, level, expected):
        assert verify_nodes.route_after_quick({"level": level}) == expected


class TestExactCriteria:
    def test_leaf_counts_pass(self):
        update = verify_nodes.check_exact_leaves({}, {})
        (result,) = update["results"]
        assert result.criterion == "A1"
        assert result.passed

    def test_tampered_leaf_count_fails(self, monkeypatch):
        honest = verify_nodes._leaf_counts

        def tampered(nmax):
            counts = honest(nmax)
            counts[5] = Fraction(314)
            return counts

        monkeypatch.setattr(verify_nodes, "_leaf_counts", tampered)
        (result,) = verify_nodes.check_exact_leaves({}, {})["results"]
        assert not result.passed
        assert "5" in result.detail

    def test_tail_bound(self, coarse_limits):
        (result,) = verify_nodes.check_tail_bound({"limits": coarse_limits}, {})["results"]
        assert result.passed
        assert result.measured < 1.0


class TestStochasticCriteria:
    def test_uniformity_smoke(self):
        update = verify_nodes.check_uniformity({"smoke": True}, {"configurable": {"seed": 3}})
        (result,) = update["results"]
        assert result.criterion == "A7"
        assert result.passed

    def test_fractions_and_pairs_smoke(self, coarse_limits):
        state = {"smoke": True, "limits": coarse_limits}
        update = verify_nodes.check_rank_fractions(state, {"configurable": {"seed": 8}})
        assert update["results"][0].passed
        state["experiment"] = update["experiment"]
        (pairs,) = verify_nodes.check_pair_independence(state, {})["results"]
        assert pairs.criterion == "A9"
        assert pairs.passed

    def test_largest_rank_smoke(self, coarse_limits):
        state = {"smoke": True, "limits": coarse_limits}
        (result,) = verify_nodes.check_largest_rank(state, {"configurable": {"seed": 8}})["results"]
        assert result.criterion == "A10"
        assert result.passed


@pytest.mark.slow
class TestWorkflow:
    def test_quick(self):
        report = VerifyWorkflow().run(level="quick")
        assert [r.criterion for r in report.results] == ["A1", "A2", "A3", "A4", "A5", "A6"]
        assert report.passed, report.failed()

    def test_full_smoke(self):
        report = VerifyWorkflow().run(level=VerifyLevel.FULL, smoke=True, seed=5)
        assert [r.criterion for r in report.results][-4:] == ["A7", "A8", "A9", "A10"]
        assert report.passed, report.failed()

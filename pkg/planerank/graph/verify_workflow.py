"""LangGraph workflow running the acceptance criteria in order."""
from __future__ import annotations

import logging
from typing import Optional, Union

from langgraph.graph import END, START, StateGraph

from planerank.graph.verify_nodes import (
    check_convergence,
    check_exact_leaves,
    check_finite_inequalities,
    check_largest_rank,
    check_limit_constants,
    check_oracle_agreement,
    check_pair_independence,
    check_rank_fractions,
    check_tail_bound,
    check_uniformity,
    route_after_quick,
)
from planerank.graph.verify_state import VerifyGraphState
from planerank.models.verify_schemas import VerificationReport, VerifyLevel

logger = logging.getLogger(__name__)


def create_verify_graph() -> StateGraph:
    """Create and return the compiled verify workflow."""
    builder = StateGraph(VerifyGraphState)

    # Quick criteria
    builder.add_node("check_exact_leaves", check_exact_leaves)
    builder.add_node("check_oracle_agreement", check_oracle_agreement)
    builder.add_node("check_limit_constants", check_limit_constants)
    builder.add_node("check_tail_bound", check_tail_bound)
    builder.add_node("check_finite_inequalities", check_finite_inequalities)
    builder.add_node("check_convergence", check_convergence)

    # Simulation criteria
    builder.add_node("check_uniformity", check_uniformity)
    builder.add_node("check_rank_fractions", check_rank_fractions)
    builder.add_node("check_pair_independence", check_pair_independence)
    builder.add_node("check_largest_rank", check_largest_rank)

    builder.add_edge(START, "check_exact_leaves")
    builder.add_edge("check_exact_leaves", "check_oracle_agreement")
    builder.add_edge("check_oracle_agreement", "check_limit_constants")
    builder.add_edge("check_limit_constants", "check_tail_bound")
    builder.add_edge("check_tail_bound", "check_finite_inequalities")
    builder.add_edge("check_finite_inequalities", "check_convergence")

    builder.add_conditional_edges(
        "check_convergence",
        route_after_quick,
        {"check_uniformity": "check_uniformity", "end": END},
    )

    builder.add_edge("check_uniformity", "check_rank_fractions")
    builder.add_edge("check_rank_fractions", "check_pair_independence")
    builder.add_edge("check_pair_independence", "check_largest_rank")
    builder.add_edge("check_largest_rank", END)

    return builder.compile()


# Create the compiled graph
verify_graph = create_verify_graph()


class VerifyWorkflow:
    """Wrapper class running the acceptance suite."""

    def __init__(self) -> None:
        self.graph = verify_graph

    def run(
        self,
        level: Union[str, VerifyLevel] = VerifyLevel.QUICK,
        smoke: bool = False,
        seed: Optional[int] = None,
    ) -> VerificationReport:
        """Execute the criteria for the given level."""
        level = VerifyLevel(level)
        initial_state: VerifyGraphState = {"level": level, "smoke": smoke, "results": []}
        config = {"configurable": {"seed": seed}} if seed is not None else {}

        final_state = self.graph.invoke(initial_state, config=config)

        report = VerificationReport(level=level, smoke=smoke, results=final_state["results"])
        logger.info(
            "Verification finished",
            extra={"level": level.value, "passed": report.passed, "criteria": len(report.results)},
        )
        return report

"""LangGraph state definition for the acceptance-suite workflow."""
from __future__ import annotations

import operator
from typing import Annotated, TypedDict

from planerank.models.limit_schemas import LimitConstants
from planerank.models.simulation_schemas import ExperimentReport
from planerank.models.verify_schemas import CriterionResult, VerifyLevel


class VerifyGraphState(TypedDict, total=False):
    """State that flows through the verify workflow."""
    # Input
    level: VerifyLevel
    smoke: bool

    # Shared between criteria
    limits: LimitConstants
    experiment: ExperimentReport

    # Output, one entry per criterion in run order
    results: Annotated[list[CriterionResult], operator.add]

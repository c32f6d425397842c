"""Acceptance suite results."""
from __future__ import annotations

from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, Field


class VerifyLevel(str, Enum):
    """quick runs the exact and quadrature criteria; full adds the simulations."""
    QUICK = "quick"
    FULL = "full"


class CriterionResult(BaseModel):
    criterion: str = Field(description="Criterion id, e.g. A3")
    title: str
    passed: bool
    measured: Optional[float] = Field(default=None, description="Headline measurement, e.g. the largest error")
    tolerance: Optional[float] = None
    detail: str = ""


class VerificationReport(BaseModel):
    level: VerifyLevel
    smoke: bool = False
    results: List[CriterionResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failed(self) -> List[CriterionResult]:
        return [r for r in self.results if not r.passed]

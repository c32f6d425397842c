"""
Limit Constant Schemas

Float results of the quadrature engine: the constants c_k, the tail-bound
report and the cross-method comparison.
"""
from __future__ import annotations

from typing import List, Optional

from pydantic import BaseModel, Field

from planerank.integrators.base import IntegrationMethod


class LimitConstants(BaseModel):
    """c_0..c_kmax with the integration settings that produced them."""
    kmax: int = Field(ge=0)
    c: List[float] = Field(description="Limit fraction of rank-k vertices, k = 0..kmax")
    gamma: List[float] = Field(description="gamma_k = c_k / 2")
    method: IntegrationMethod
    step: float = Field(gt=0)
    grid_points: int = Field(ge=2)

    def cumulative(self, k: int) -> float:
        """Sum of c_0..c_k."""
        return float(sum(self.c[: k + 1]))

    def tail(self, k: int) -> float:
        """1 - (c_0 + ... + c_k): limit fraction of vertices with rank above k."""
        return 1.0 - self.cumulative(k)


class TailRow(BaseModel):
    k: int
    c: float
    cumulative: float
    tail: float
    bound: float
    holds: bool


class TailReport(BaseModel):
    """Tail 1 - sum_{j<=k} c_j against 3^{k+1}/(2k+1)! for every computed k."""
    rows: List[TailRow]
    all_hold: bool
    tail_after_3: Optional[float] = None
    published_tail_after_3: float
    tail_after_3_error: Optional[float] = None


class MethodComparison(BaseModel):
    """Substituted versus plain trapezoid at one step."""
    kmax: int
    step: float
    substituted: List[float]
    plain: List[float]
    differences: List[float]
    tolerance: float
    agree: bool
    plain_step_delta: Optional[float] = Field(
        default=None,
        description="Plain-scheme step-halving change the tolerance was derived from",
    )

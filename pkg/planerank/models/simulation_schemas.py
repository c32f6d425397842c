"""
Simulation Schemas

Configuration and results of the Monte Carlo engine.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List

import numpy as np
from pydantic import BaseModel, Field


@dataclass
class SlotArray:
    """
    Attachment slots of a growing tree.

    With m vertices the first 2m-1 entries are live: every non-root label v
    appears deg(v) times and the root deg(root)+1 times, counting the edge to
    the parent in deg. The buffer is preallocated for the final size.
    """
    slots: np.ndarray
    m: int

    @classmethod
    def for_size(cls, n: int) -> "SlotArray":
        buffer = np.zeros(max(1, 2 * n - 1), dtype=np.int64)
        buffer[0] = 1
        return cls(slots=buffer, m=1)

    @property
    def size(self) -> int:
        return 2 * self.m - 1

    def live(self) -> np.ndarray:
        return self.slots[: self.size]


class ExperimentConfig(BaseModel):
    """One Monte Carlo experiment."""
    n: int = Field(ge=1, description="Vertices per tree")
    replicates: int = Field(ge=1)
    master_seed: int = Field(ge=0, lt=2**64)
    kmax_report: int = Field(default=6, ge=0, description="Ranks above this share one overflow bucket")
    pair_samples_per_tree: int = Field(default=0, ge=0)
    epsilon: float = Field(default=0.5, gt=0, lt=1, description="Width parameter of the largest-rank window")


class ReplicateResult(BaseModel):
    """Census of one simulated tree. Lists are indexed by rank; the last bucket collects ranks above kmax_report."""
    index: int
    seed: int
    rank_counts: List[int]
    ptype_counts: List[int]
    ptype_target_count: int
    largest_rank: int
    largest_ptype_rank: int
    pair_counts: List[List[int]]
    pair_samples: int


class LimitComparison(BaseModel):
    """Observed mean against a reference value, in standard errors."""
    label: str
    observed: float
    standard_error: float
    expected: float
    z_score: float
    within: bool


class ExperimentReport(BaseModel):
    """Aggregate over all replicates, ordered by replicate index."""
    config: ExperimentConfig
    rank_fraction_mean: List[float]
    rank_fraction_se: List[float]
    ptype_count_mean: List[float]
    ptype_count_se: List[float]
    ptype_target_rank: int
    ptype_target_mean: float
    ptype_target_expected: float
    largest_rank_histogram: Dict[int, int]
    largest_ptype_rank_histogram: Dict[int, int]
    largest_rank_ratios: List[float]
    ratio_window_fraction: float
    rank_window: List[int]
    rank_window_fraction: float
    largest_dominates_ptype: bool
    pair_joint: List[List[float]]
    pair_joint_se: List[List[float]]
    pair_total: int
    comparisons: List[LimitComparison] = Field(default_factory=list)
    pair_comparisons: List[LimitComparison] = Field(default_factory=list)


class UniformityResult(BaseModel):
    """Chi-square goodness of fit of sampled trees against the uniform law."""
    n: int
    samples: int
    trees: int
    statistic: float
    p_value: float
    frequencies: List[int] = Field(description="Sample count per tree, in oracle enumeration order")

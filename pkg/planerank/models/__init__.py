"""Data models module."""
from planerank.models.series_schemas import ExactRational, SeriesEGF
from planerank.models.enum_schemas import (
    RootRankTable,
    RankTable,
    PathAlgTable,
    PTypeTable,
)
from planerank.models.oracle_schemas import PlaneTree, OracleCensus
from planerank.models.limit_schemas import (
    LimitConstants,
    TailRow,
    TailReport,
    MethodComparison,
)
from planerank.models.simulation_schemas import (
    SlotArray,
    ExperimentConfig,
    ReplicateResult,
    LimitComparison,
    ExperimentReport,
    UniformityResult,
)
from planerank.models.output_schemas import OutputFormat, OutputMeta, OutputRecord
from planerank.models.verify_schemas import VerifyLevel, CriterionResult, VerificationReport

__all__ = [
    # Series
    "ExactRational",
    "SeriesEGF",
    # Exact tables
    "RootRankTable",
    "RankTable",
    "PathAlgTable",
    "PTypeTable",
    # Oracle
    "PlaneTree",
    "OracleCensus",
    # Limits
    "LimitConstants",
    "TailRow",
    "TailReport",
    "MethodComparison",
    # Simulation
    "SlotArray",
    "ExperimentConfig",
    "ReplicateResult",
    "LimitComparison",
    "ExperimentReport",
    "UniformityResult",
    # Output
    "OutputFormat",
    "OutputMeta",
    "OutputRecord",
    # Verification
    "VerifyLevel",
    "CriterionResult",
    "VerificationReport",
]

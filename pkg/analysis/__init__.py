from .statistics import (
    MEASURES,
    ConfusionCell,
    FrameworkStats,
    aggregate_stats,
    format_stats_table,
    framework_stats,
)
from .sufficiency import (
    FlipFilter,
    SufficiencyCase,
    SufficiencyResult,
    TargetKind,
    sufficiency_curve,
    sufficiency_min_k,
)
from .metrics import ClassScores, Metrics, metrics, pearson

__all__ = [
    "MEASURES",
    "ConfusionCell",
    "FrameworkStats",
    "aggregate_stats",
    "format_stats_table",
    "framework_stats",
    "FlipFilter",
    "SufficiencyCase",
    "SufficiencyResult",
    "TargetKind",
    "sufficiency_curve",
    "sufficiency_min_k",
    "ClassScores",
    "Metrics",
    "metrics",
    "pearson",
]

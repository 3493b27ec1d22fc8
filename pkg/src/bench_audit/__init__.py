"""bench_audit: audit time-series forecasting benchmarks for dataset
cherry-picking bias.

Scores models across datasets, ranks them over every subset of datasets,
and quantifies how selectively chosen subsets distort reported rankings.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .audit import (
    AuditConfig,
    AuditReport,
    CherryPickCurve,
    best_rank_curve,
    misidentification_risk,
    run_audit,
    top_k_reportable,
)
from .forecasters import Forecast, ForecastSet, forecast_all
from .metrics import ScoreMatrix, build_score_matrix, mase, smape
from .ranking import (
    RankingOutcome,
    baseline_ranking,
    rank_distribution,
    rank_on_subset,
)
from .series import (
    Dataset,
    DatasetCollection,
    TimeSeries,
    concat_global,
    time_delay_embed,
    train_test_split,
    validate_collection,
)
from .subsets import enumerate_subsets

__version__ = "0.1.0"

__all__ = [
    "AuditConfig",
    "AuditReport",
    "CherryPickCurve",
    "Dataset",
    "DatasetCollection",
    "Forecast",
    "ForecastSet",
    "KERNEL_BACKEND",
    "RankingOutcome",
    "ScoreMatrix",
    "TimeSeries",
    "baseline_ranking",
    "best_rank_curve",
    "build_score_matrix",
    "concat_global",
    "enumerate_subsets",
    "forecast_all",
    "mase",
    "misidentification_risk",
    "rank_distribution",
    "rank_on_subset",
    "run_audit",
    "smape",
    "time_delay_embed",
    "top_k_reportable",
    "train_test_split",
    "validate_collection",
]

"""Forecast error metrics and aggregation into a models x datasets matrix."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    EmptyInput,
    LengthMismatch,
    MissingCoverage,
    ZeroScale,
)
from .forecasters import ForecastSet
from .series import DatasetCollection, train_test_split

METRICS = ("smape", "mase")


@dataclass(frozen=True)
class ScoreMatrix:
    """Models x datasets error scores; lower is better."""

    model_ids: tuple
    dataset_names: tuple
    scores: np.ndarray
    metric_name: str

    def __post_init__(self):
        object.__setattr__(self, "model_ids", tuple(self.model_ids))
        object.__setattr__(self, "dataset_names", tuple(self.dataset_names))
        scores = np.asarray(self.scores, dtype=float)
        object.__setattr__(self, "scores", scores)
        m, n = len(self.model_ids), len(self.dataset_names)
        if scores.shape != (m, n):
            raise ValueError(
                f"score matrix shape {scores.shape} != ({m} models, {n} datasets)"
            )
        if len(set(self.model_ids)) != m:
            raise ValueError("duplicate model ids")
        if len(set(self.dataset_names)) != n:
            raise ValueError("duplicate dataset names")
        if not np.all(np.isfinite(scores)):
            raise ValueError("score matrix contains non-finite values")
        if self.metric_name == "smape" and (
            scores.min(initial=0.0) < 0.0 or scores.max(initial=0.0) > 200.0
        ):
            raise ValueError("smape scores must lie in [0, 200]")
        scores.setflags(write=False)

    @property
    def n_models(self) -> int:
        return len(self.model_ids)

    @property
    def n_datasets(self) -> int:
        return len(self.dataset_names)

    def model_row(self, model_id: str) -> int:
        try:
            return self.model_ids.index(model_id)
        except ValueError:
            raise KeyError(model_id) from None


def smape(actual, forecast) -> float:
    """Symmetric MAPE on the 0-200 scale; 0/0 terms count as zero error."""
    a = np.asarray(actual, dtype=float)
    f = np.asarray(forecast, dtype=float)
    if a.shape != f.shape:
        raise LengthMismatch(f"length {len(a)} vs {len(f)}")
    if a.size == 0:
        raise EmptyInput("smape needs at least one observation")
    denom = (np.abs(a) + np.abs(f)) / 2.0
    terms = np.where(denom == 0.0, 0.0, np.abs(f - a) / np.where(denom == 0.0, 1.0, denom))
    return float(100.0 * terms.mean())


def mase(actual, forecast, train, seasonal_period: int) -> float:
    """Horizon MAE scaled by the in-sample seasonal-naive MAE."""
    a = np.asarray(actual, dtype=float)
    f = np.asarray(forecast, dtype=float)
    y = np.asarray(train, dtype=float)
    if a.shape != f.shape:
        raise LengthMismatch(f"length {len(a)} vs {len(f)}")
    if a.size == 0:
        raise EmptyInput("mase needs at least one observation")
    if len(y) <= seasonal_period:
        raise LengthMismatch(
            f"train length {len(y)} must exceed seasonal_period {seasonal_period}"
        )
    scale = float(np.mean(np.abs(y[seasonal_period:] - y[:-seasonal_period])))
    if scale == 0.0:
        raise ZeroScale("in-sample seasonal-naive error is zero")
    return float(np.mean(np.abs(a - f)) / scale)


def _series_metric(metric, series, forecast_values, horizon):
    train, test = train_test_split(series, horizon)
    if metric == "smape":
        return smape(test.values, forecast_values)
    if metric == "mase":
        try:
            return mase(test.values, forecast_values, train.values, series.seasonal_period)
        except ZeroScale as exc:
            raise ZeroScale(f"series {series.id!r}: {exc}") from None
    raise ValueError(f"unknown metric {metric!r}")


def dataset_score(
    forecasts: ForecastSet,
    collection: DatasetCollection,
    metric: str,
    model: str,
    dataset: str,
) -> float:
    """Macro-average the per-series metric over one dataset (each series
    weighs equally regardless of length)."""
    ds = collection.get(dataset)
    index = forecasts.index()
    per_series = []
    for series in ds.series:
        key = (model, dataset, series.id)
        if key not in index:
            raise MissingCoverage([key])
        per_series.append(
            _series_metric(metric, series, index[key].values, ds.horizon)
        )
    return float(np.mean(per_series))


def build_score_matrix(
    forecasts: ForecastSet, collection: DatasetCollection, metric: str
) -> ScoreMatrix:
    """Score every (model, dataset) pair; coverage gaps abort with a full list."""
    index = forecasts.index()
    gaps = []
    for model in forecasts.models:
        for dataset in collection.datasets:
            for series in dataset.series:
                if (model, dataset.name, series.id) not in index:
                    gaps.append((model, dataset.name, series.id))
    if gaps:
        raise MissingCoverage(gaps)
    scores = np.array(
        [
            [
                dataset_score(forecasts, collection, metric, model, dataset.name)
                for dataset in collection.datasets
            ]
            for model in forecasts.models
        ],
        dtype=float,
    )
    return ScoreMatrix(forecasts.models, tuple(collection.names()), scores, metric)

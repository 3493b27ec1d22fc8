"""Classical local forecasting baselines and the bulk forecasting driver.

Every forecaster takes the raw training values and returns a list of ``h``
point forecasts. All of them are deterministic: no optimizer randomness, no
platform-dependent estimation (SES tuning is an explicit grid search).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    AllZeroSeries,
    ForecastGaps,
    InvalidAlpha,
    NegativeDemand,
    SeriesTooShort,
    UnknownModel,
)
from .series import DatasetCollection, train_test_split

AUTO = "auto"

# Alpha grid for auto-tuned SES: 0.01 .. 1.00, ties to the smallest alpha.
_SES_GRID = [round((i + 1) / 100.0, 2) for i in range(100)]


@dataclass(frozen=True)
class Forecast:
    model_id: str
    dataset_name: str
    series_id: str
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))


@dataclass(frozen=True)
class ForecastSet:
    """Forecasts indexed by (model, dataset, series); duplicates rejected."""

    forecasts: tuple
    models: tuple

    def __post_init__(self):
        object.__setattr__(self, "forecasts", tuple(self.forecasts))
        object.__setattr__(self, "models", tuple(self.models))
        seen = set()
        for f in self.forecasts:
            key = (f.model_id, f.dataset_name, f.series_id)
            if key in seen:
                raise ValueError(f"duplicate forecast triple {key}")
            seen.add(key)

    def get(self, model_id: str, dataset_name: str, series_id: str) -> Forecast:
        for f in self.forecasts:
            if (f.model_id, f.dataset_name, f.series_id) == (
                model_id, dataset_name, series_id,
            ):
                return f
        raise KeyError((model_id, dataset_name, series_id))

    def index(self):
        return {(f.model_id, f.dataset_name, f.series_id): f for f in self.forecasts}


def snaive(train, seasonal_period: int, h: int):
    """Repeat the last full season cyclically; m=1 is the naive forecast."""
    y = np.asarray(train, dtype=float)
    t = len(y)
    if t < seasonal_period:
        raise SeriesTooShort(
            f"snaive needs length >= seasonal_period ({t} < {seasonal_period})"
        )
    season = y[t - seasonal_period:]
    return [float(season[(j - 1) % seasonal_period]) for j in range(1, h + 1)]


def rwd(train, h: int):
    """Random walk with drift: last value plus the average historical change."""
    y = np.asarray(train, dtype=float)
    t = len(y)
    if t < 2:
        raise SeriesTooShort(f"rwd needs length >= 2 (got {t})")
    drift = (y[-1] - y[0]) / (t - 1)
    return [float(y[-1] + j * drift) for j in range(1, h + 1)]


def _ses_level_and_sse(y, alpha: float):
    """Run the smoothing recursion; return (final level, one-step SSE)."""
    level = y[0]
    sse = 0.0
    for v in y[1:]:
        err = v - level
        sse += err * err
        level = alpha * v + (1.0 - alpha) * level
    return level, sse


def ses(train, alpha=AUTO, h: int = 1):
    """Simple exponential smoothing with a flat forecast at the final level.

    ``alpha="auto"`` grid-searches {0.01, ..., 1.00} for the smallest
    in-sample one-step squared error, ties going to the smallest alpha.
    """
    y = [float(v) for v in train]
    if not y:
        raise SeriesTooShort("ses needs length >= 1")
    if alpha == AUTO:
        best_alpha, best_sse = _SES_GRID[0], None
        for a in _SES_GRID:
            _, sse = _ses_level_and_sse(y, a)
            if best_sse is None or sse < best_sse:
                best_alpha, best_sse = a, sse
        alpha = best_alpha
    else:
        alpha = float(alpha)
        if not 0.0 <= alpha <= 1.0:
            raise InvalidAlpha(f"alpha {alpha} outside [0, 1]")
    level, _ = _ses_level_and_sse(y, alpha)
    return [float(level)] * h


def theta(train, h: int = 1):
    """Two-line theta: OLS trend extrapolation averaged with SES on the
    curvature-doubled line (2y minus the fitted trend)."""
    y = np.asarray(train, dtype=float)
    t = len(y)
    if t < 3:
        raise SeriesTooShort(f"theta needs length >= 3 (got {t})")
    x = np.arange(1, t + 1, dtype=float)
    xbar = x.mean()
    ybar = y.mean()
    slope = float(np.sum((x - xbar) * (y - ybar)) / np.sum((x - xbar) ** 2))
    intercept = ybar - slope * xbar
    trend_fit = intercept + slope * x
    theta2_line = 2.0 * y - trend_fit
    ses_flat = ses(theta2_line, AUTO, h)
    return [
        float(0.5 * (intercept + slope * (t + j)) + 0.5 * ses_flat[j - 1])
        for j in range(1, h + 1)
    ]


def croston(train, alpha: float = 0.1, h: int = 1):
    """Croston's method for intermittent demand: separate SES smoothers for
    nonzero demand sizes and inter-demand intervals; flat forecast at z/p."""
    y = [float(v) for v in train]
    if any(v < 0 for v in y):
        raise NegativeDemand("croston requires nonnegative values")
    nonzero = [(i + 1, v) for i, v in enumerate(y) if v != 0.0]
    if not nonzero:
        raise AllZeroSeries("croston requires at least one nonzero value")
    first_idx, first_val = nonzero[0]
    z = first_val
    p = float(first_idx)
    prev_idx = first_idx
    for idx, val in nonzero[1:]:
        gap = idx - prev_idx
        z = alpha * val + (1.0 - alpha) * z
        p = alpha * gap + (1.0 - alpha) * p
        prev_idx = idx
    return [float(z / p)] * h


def _run_snaive(train, m, h):
    return snaive(train, m, h)


def _run_rwd(train, m, h):
    return rwd(train, h)


def _run_ses(train, m, h):
    return ses(train, AUTO, h)


def _run_theta(train, m, h):
    return theta(train, h)


def _run_croston(train, m, h):
    return croston(train, 0.1, h)


REGISTRY = {
    "snaive": _run_snaive,
    "rwd": _run_rwd,
    "ses": _run_ses,
    "theta": _run_theta,
    "croston": _run_croston,
}


def forecast_all(collection: DatasetCollection, model_ids) -> ForecastSet:
    """Forecast the held-out horizon of every series with every model.

    Per-series failures are collected as coverage gaps and reported together,
    so a single intermittent series does not silently drop a model.
    """
    model_ids = list(model_ids)
    for model_id in model_ids:
        if model_id not in REGISTRY:
            raise UnknownModel(
                f"unknown model {model_id!r}; built-ins: {sorted(REGISTRY)}"
            )
    forecasts = []
    gaps = []
    for dataset in collection.datasets:
        for series in dataset.series:
            train, _ = train_test_split(series, dataset.horizon)
            for model_id in model_ids:
                try:
                    values = REGISTRY[model_id](
                        train.values, dataset.seasonal_period, dataset.horizon
                    )
                except Exception as exc:  # noqa: BLE001 - reported as a gap
                    gaps.append((model_id, dataset.name, series.id, str(exc)))
                    continue
                forecasts.append(
                    Forecast(model_id, dataset.name, series.id, values)
                )
    if gaps:
        raise ForecastGaps(gaps)
    return ForecastSet(tuple(forecasts), tuple(model_ids))

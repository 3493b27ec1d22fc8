"""File loaders: long-format dataset CSVs, external forecast CSVs, and
prebuilt score-matrix JSON documents."""

from __future__ import annotations

import csv
import json
import math

import numpy as np

from .errors import (
    DatasetMismatch,
    DuplicateLabel,
    DuplicateModel,
    DuplicateTriple,
    EmptyFile,
    MetricMismatch,
    NonContiguousSteps,
    NonFiniteValue,
    ParseError,
    ShapeMismatch,
)
from .forecasters import Forecast, ForecastSet
from .metrics import ScoreMatrix
from .series import Dataset, TimeSeries

DATASET_HEADER = ["series_id", "step", "value"]
FORECAST_HEADER = ["model", "dataset", "series_id", "step", "value"]


def _parse_value(raw: str, path, lineno):
    try:
        value = float(raw)
    except ValueError:
        raise ParseError(f"{path}:{lineno}: bad value {raw!r}") from None
    if not math.isfinite(value):
        raise NonFiniteValue(f"{path}:{lineno}: non-finite value {raw!r}")
    return value


def _parse_step(raw: str, path, lineno):
    try:
        return int(raw)
    except ValueError:
        raise ParseError(f"{path}:{lineno}: bad step {raw!r}") from None


def load_dataset_csv(path, name, horizon, seasonal_period) -> Dataset:
    """Read a long-format `series_id,step,value` CSV into a Dataset.

    Steps must be contiguous ascending from 1 within each series; rows for a
    series may not be interleaved out of step order.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise EmptyFile(f"{path}: empty file") from None
        if header != DATASET_HEADER:
            raise ParseError(
                f"{path}:1: expected header {','.join(DATASET_HEADER)!r}"
            )
        values = {}
        order = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 3:
                raise ParseError(f"{path}:{lineno}: expected 3 fields")
            series_id, raw_step, raw_value = row
            step = _parse_step(raw_step, path, lineno)
            value = _parse_value(raw_value, path, lineno)
            if series_id not in values:
                values[series_id] = []
                order.append(series_id)
            expected = len(values[series_id]) + 1
            if step != expected:
                raise NonContiguousSteps(
                    f"{path}:{lineno}: series {series_id!r} step {step}, "
                    f"expected {expected}"
                )
            values[series_id].append(value)
    if not order:
        raise EmptyFile(f"{path}: no data rows")
    series = tuple(
        TimeSeries(sid, tuple(values[sid]), seasonal_period) for sid in order
    )
    return Dataset(name, series, horizon, seasonal_period)


def load_forecasts_csv(path) -> ForecastSet:
    """Read a `model,dataset,series_id,step,value` CSV into a ForecastSet.

    This is the entry point for forecasts produced outside this tool (deep
    learning models and the like).
    """
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise EmptyFile(f"{path}: empty file") from None
        if header != FORECAST_HEADER:
            raise ParseError(
                f"{path}:1: expected header {','.join(FORECAST_HEADER)!r}"
            )
        values = {}
        order = []
        models = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 5:
                raise ParseError(f"{path}:{lineno}: expected 5 fields")
            model, dataset, series_id, raw_step, raw_value = row
            step = _parse_step(raw_step, path, lineno)
            value = _parse_value(raw_value, path, lineno)
            key = (model, dataset, series_id)
            if key not in values:
                values[key] = []
                order.append(key)
                if model not in models:
                    models.append(model)
            elif step == 1:
                # a second step-1 row means the triple was emitted twice
                raise DuplicateTriple(
                    f"{path}:{lineno}: triple {key} appears twice"
                )
            expected = len(values[key]) + 1
            if step != expected:
                raise NonContiguousSteps(
                    f"{path}:{lineno}: triple {key} step {step}, "
                    f"expected {expected}"
                )
            values[key].append(value)
    if not order:
        raise EmptyFile(f"{path}: no data rows")
    forecasts = tuple(
        Forecast(model, dataset, series_id, tuple(values[(model, dataset, series_id)]))
        for model, dataset, series_id in order
    )
    return ForecastSet(forecasts, tuple(models))


def load_score_matrix_json(path) -> ScoreMatrix:
    """Read `{"metric", "models", "datasets", "scores"}` JSON."""
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: {exc}") from None
    for key in ("metric", "models", "datasets", "scores"):
        if key not in doc:
            raise ParseError(f"{path}: missing key {key!r}")
    models = [str(m) for m in doc["models"]]
    datasets = [str(d) for d in doc["datasets"]]
    if len(set(models)) != len(models):
        raise DuplicateLabel(f"{path}: duplicate model label")
    if len(set(datasets)) != len(datasets):
        raise DuplicateLabel(f"{path}: duplicate dataset label")
    scores = doc["scores"]
    if len(scores) != len(models) or any(len(r) != len(datasets) for r in scores):
        raise ShapeMismatch(
            f"{path}: scores shape does not match {len(models)} models x "
            f"{len(datasets)} datasets"
        )
    arr = np.asarray(scores, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise NonFiniteScore(f"{path}: non-finite score")
    try:
        return ScoreMatrix(tuple(models), tuple(datasets), arr, str(doc["metric"]))
    except ValueError as exc:
        raise ShapeMismatch(f"{path}: {exc}") from None


def save_score_matrix_json(matrix: ScoreMatrix, path):
    """Write a ScoreMatrix in the format ``load_score_matrix_json`` reads."""
    doc = {
        "metric": matrix.metric_name,
        "models": list(matrix.model_ids),
        "datasets": list(matrix.dataset_names),
        "scores": [[float(v) for v in row] for row in matrix.scores],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def merge_scores(parts) -> ScoreMatrix:
    """Row-concatenate score matrices sharing datasets and metric.

    Dataset orders must match exactly; silent reordering is the failure mode
    this tool exists to audit, so mismatches are hard errors.
    """
    parts = list(parts)
    if not parts:
        raise ValueError("no matrices to merge")
    first = parts[0]
    models = []
    rows = []
    for part in parts:
        if part.metric_name != first.metric_name:
            raise MetricMismatch(
                f"metric {part.metric_name!r} != {first.metric_name!r}"
            )
        if part.dataset_names != first.dataset_names:
            raise DatasetMismatch(
                "dataset names/order differ between score matrices"
            )
        for model in part.model_ids:
            if model in models:
                raise DuplicateModel(f"model {model!r} appears in two parts")
            models.append(model)
        rows.append(part.scores)
    return ScoreMatrix(
        tuple(models), first.dataset_names, np.vstack(rows), first.metric_name
    )

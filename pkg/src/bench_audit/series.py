"""Core data model: univariate series, datasets, splits, and lag embedding."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import EmbedOrderTooLarge, HorizonTooLarge


@dataclass(frozen=True)
class TimeSeries:
    """A univariate, regularly sampled series identified by name.

    Values are index-based; no timestamps are kept. ``seasonal_period`` is the
    number of steps per seasonal cycle (12 monthly, 4 quarterly, 1 yearly,
    24 hourly-daily, 365 daily-yearly).
    """

    id: str
    values: tuple
    seasonal_period: int = 1
    unit: str = ""

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if len(self.values) < 1:
            raise ValueError(f"series {self.id!r} is empty")
        if self.seasonal_period < 1:
            raise ValueError(f"series {self.id!r}: seasonal_period must be >= 1")

    @property
    def length(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class Dataset:
    """A named collection of series sharing one horizon and seasonal period."""

    name: str
    series: tuple
    horizon: int
    seasonal_period: int

    def __post_init__(self):
        object.__setattr__(self, "series", tuple(self.series))
        if not self.series:
            raise ValueError(f"dataset {self.name!r} has no series")
        if self.horizon < 1:
            raise ValueError(f"dataset {self.name!r}: horizon must be >= 1")

    def series_ids(self):
        return [s.id for s in self.series]


@dataclass(frozen=True)
class DatasetCollection:
    """Ordered datasets; the ordering defines subset bitmask positions."""

    datasets: tuple

    def __post_init__(self):
        object.__setattr__(self, "datasets", tuple(self.datasets))
        if not self.datasets:
            raise ValueError("collection has no datasets")

    @property
    def count(self) -> int:
        return len(self.datasets)

    def names(self):
        return [d.name for d in self.datasets]

    def get(self, name: str) -> Dataset:
        for d in self.datasets:
            if d.name == name:
                return d
        raise KeyError(name)


@dataclass(frozen=True)
class SupervisedPair:
    """One (lags -> target) training example from a sliding window.

    Lags are ordered most-recent-first.
    """

    target: float
    lags: tuple
    origin_series: str


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, message: str):
        self.violations.append(message)


def train_test_split(series: TimeSeries, horizon: int):
    """Split off the final ``horizon`` values as the test window."""
    if series.length <= horizon:
        raise HorizonTooLarge(
            f"series {series.id!r}: length {series.length} must exceed horizon {horizon}"
        )
    train = TimeSeries(
        series.id, series.values[: series.length - horizon],
        series.seasonal_period, series.unit,
    )
    test = TimeSeries(
        series.id, series.values[series.length - horizon:],
        series.seasonal_period, series.unit,
    )
    return train, test


def time_delay_embed(series: TimeSeries, p: int):
    """Build (lags -> target) pairs with embedding order ``p``."""
    if series.length <= p:
        raise EmbedOrderTooLarge(
            f"series {series.id!r}: length {series.length} must exceed order {p}"
        )
    v = series.values
    pairs = []
    for i in range(p, series.length):
        # lags most-recent-first: y_{i-1}, ..., y_{i-p}
        pairs.append(SupervisedPair(v[i], tuple(v[i - 1 - j] for j in range(p)), series.id))
    return pairs


def concat_global(collection: DatasetCollection, p: int):
    """Pool embedded pairs over all series of all datasets, in order."""
    pairs = []
    for dataset in collection.datasets:
        for series in dataset.series:
            pairs.extend(time_delay_embed(series, p))
    return pairs


def validate_collection(collection: DatasetCollection) -> ValidationReport:
    """Check every structural invariant; violations are data, not exceptions."""
    report = ValidationReport()
    seen = set()
    for dataset in collection.datasets:
        if dataset.name in seen:
            report.add(f"duplicate dataset name {dataset.name!r}")
        seen.add(dataset.name)
        for series in dataset.series:
            for idx, v in enumerate(series.values):
                if not math.isfinite(v):
                    report.add(
                        f"dataset {dataset.name!r} series {series.id!r}: "
                        f"non-finite value at index {idx}"
                    )
            if series.length <= dataset.horizon:
                report.add(
                    f"dataset {dataset.name!r} series {series.id!r}: "
                    f"length {series.length} <= horizon {dataset.horizon}"
                )
            if series.seasonal_period != dataset.seasonal_period:
                report.add(
                    f"dataset {dataset.name!r} series {series.id!r}: "
                    f"seasonal_period {series.seasonal_period} != dataset's "
                    f"{dataset.seasonal_period}"
                )
    return report

import numpy as np
import pytest

from bench_audit.metrics import ScoreMatrix
from bench_audit.series import Dataset, DatasetCollection, TimeSeries


@pytest.fixture
def tiny_matrix():
    """3 models x 3 datasets; every model wins exactly one dataset."""
    return ScoreMatrix(
        ("M1", "M2", "M3"),
        ("D1", "D2", "D3"),
        np.array([[1.0, 3.0, 3.0], [2.0, 1.0, 2.0], [3.0, 2.0, 1.0]]),
        "generic",
    )


@pytest.fixture
def small_collection():
    d1 = Dataset(
        "alpha",
        (
            TimeSeries("a1", (1, 2, 3, 4, 5, 6, 7, 8), 4),
            TimeSeries("a2", (5, 4, 3, 2, 1, 2, 3, 4), 4),
        ),
        horizon=2,
        seasonal_period=4,
    )
    d2 = Dataset(
        "beta",
        (TimeSeries("b1", (10, 12, 11, 13, 12, 14), 1),),
        horizon=2,
        seasonal_period=1,
    )
    return DatasetCollection((d1, d2))

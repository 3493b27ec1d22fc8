"""Ranking models on dataset subsets of a score matrix."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import rankdata

from .errors import EmptySubset, UnknownColumns, UnknownModel
from .metrics import ScoreMatrix
from .subsets import mask_to_columns

MEAN_RANK = "mean_rank"
MEAN_SCORE = "mean_score"
AGGREGATIONS = (MEAN_RANK, MEAN_SCORE)

TIE_AVERAGE = "average"
TIE_COMPETITION = "competition"
TIE_DETERMINISTIC = "deterministic"
TIE_POLICIES = (TIE_AVERAGE, TIE_COMPETITION, TIE_DETERMINISTIC)

_RANKDATA_METHOD = {
    TIE_AVERAGE: "average",
    TIE_COMPETITION: "min",
    TIE_DETERMINISTIC: "ordinal",
}


@dataclass(frozen=True)
class RankingOutcome:
    subset: int  # bitmask over dataset columns
    aggregation: str
    tie_policy: str
    model_ids: tuple
    ranks: tuple
    winner: str

    def rank_of(self, model_id: str) -> float:
        return self.ranks[self.model_ids.index(model_id)]


def column_rank_matrix(matrix: ScoreMatrix) -> np.ndarray:
    """Within-dataset model ranks (average ties), one column per dataset."""
    return rankdata(matrix.scores, method="average", axis=0)


def aggregation_values(matrix: ScoreMatrix, aggregation: str) -> np.ndarray:
    """The per-column values a subset aggregate averages over."""
    if aggregation == MEAN_RANK:
        return column_rank_matrix(matrix)
    if aggregation == MEAN_SCORE:
        return np.asarray(matrix.scores, dtype=float)
    raise ValueError(f"unknown aggregation {aggregation!r}")


def aggregate_over_columns(values: np.ndarray, cols) -> np.ndarray:
    """Mean over the chosen columns, accumulated in ascending column order.

    The sequential accumulation mirrors the subset kernels so single-subset
    ranking and the batched search agree bit-for-bit.
    """
    acc = values[:, cols[0]].copy()
    for c in cols[1:]:
        acc += values[:, c]
    return acc / len(cols)


def rank_vector(aggregate: np.ndarray, tie_policy: str) -> np.ndarray:
    if tie_policy not in _RANKDATA_METHOD:
        raise ValueError(f"unknown tie policy {tie_policy!r}")
    return rankdata(aggregate, method=_RANKDATA_METHOD[tie_policy]).astype(float)


def rank_on_subset(
    matrix: ScoreMatrix,
    subset: int,
    aggregation: str = MEAN_RANK,
    tie_policy: str = TIE_AVERAGE,
) -> RankingOutcome:
    """Rank all models by their aggregate over the subset's datasets.

    The winner is always resolved deterministically (model order breaks
    exact ties) regardless of the rank tie policy.
    """
    if subset == 0:
        raise EmptySubset("subset bitmask is empty")
    if subset >= (1 << matrix.n_datasets):
        raise UnknownColumns(
            f"subset {subset:#x} references columns beyond {matrix.n_datasets}"
        )
    cols = mask_to_columns(subset)
    values = aggregation_values(matrix, aggregation)
    aggregate = aggregate_over_columns(values, cols)
    ranks = rank_vector(aggregate, tie_policy)
    winner = matrix.model_ids[int(np.argmin(aggregate))]
    return RankingOutcome(
        subset=subset,
        aggregation=aggregation,
        tie_policy=tie_policy,
        model_ids=matrix.model_ids,
        ranks=tuple(float(r) for r in ranks),
        winner=winner,
    )


def full_subset_mask(matrix: ScoreMatrix) -> int:
    return (1 << matrix.n_datasets) - 1


def baseline_ranking(
    matrix: ScoreMatrix,
    aggregation: str = MEAN_RANK,
    tie_policy: str = TIE_AVERAGE,
) -> RankingOutcome:
    """Ranking over the full dataset collection."""
    return rank_on_subset(matrix, full_subset_mask(matrix), aggregation, tie_policy)


def rank_distribution(matrix: ScoreMatrix, model: str):
    """The model's within-dataset rank (average ties) per dataset column."""
    try:
        row = matrix.model_row(model)
    except KeyError:
        raise UnknownModel(f"model {model!r} not in matrix") from None
    return [float(r) for r in column_rank_matrix(matrix)[row]]

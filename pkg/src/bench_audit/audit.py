"""Cherry-picking audit: best-rank search over dataset subsets, top-k
reportability, and misidentification risk against the baseline winner."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import InvalidSize, UnknownModel
from .metrics import ScoreMatrix
from .ranking import (
    MEAN_RANK,
    TIE_AVERAGE,
    TIE_COMPETITION,
    RankingOutcome,
    aggregation_values,
    baseline_ranking,
    full_subset_mask,
    rank_on_subset,
)
from .subsets import enumerate_subsets, masks_to_column_array

DEFAULT_BUDGET = 100_000

_TIE_CODE = {
    "average": _kernels.TIE_AVERAGE,
    "competition": _kernels.TIE_COMPETITION,
    "deterministic": _kernels.TIE_DETERMINISTIC,
}


@dataclass(frozen=True)
class CurveEntry:
    n: int
    best_rank: float
    witness: int  # subset bitmask
    witness_ranks: tuple  # rank of every model on the witness subset


@dataclass(frozen=True)
class CherryPickCurve:
    model_id: str
    model_ids: tuple  # order of witness_ranks entries
    entries: tuple

    @property
    def n_max(self) -> int:
        return len(self.entries)

    def best_rank(self, n: int) -> float:
        return self.entries[n - 1].best_rank


@dataclass(frozen=True)
class AuditConfig:
    n_max: int
    k_values: tuple = (1, 2, 3)
    aggregation: str = MEAN_RANK
    search_tie_policy: str = TIE_COMPETITION
    distribution_tie_policy: str = TIE_AVERAGE
    budget: int = DEFAULT_BUDGET
    seed: int = 0


@dataclass(frozen=True)
class AuditReport:
    config: AuditConfig
    model_ids: tuple
    dataset_names: tuple
    baseline: RankingOutcome
    curves: tuple  # one CherryPickCurve per model, in model order
    top_k_table: dict  # {n: {k: fraction}}
    risk_curve: dict  # {n: fraction}
    modes: dict = field(default_factory=dict)  # {n: {"mode", "count", ...}}


def _pass_for_size(matrix, values, n, tie_policy, budget, seed):
    """One kernel sweep over all (or sampled) size-n subsets."""
    masks, mode = enumerate_subsets(matrix.n_datasets, n, budget, seed)
    colidx = masks_to_column_array(masks)
    best_rank, best_idx, best_gap, winner_counts = _kernels.audit_pass(
        values, colidx, _TIE_CODE[tie_policy]
    )
    return masks, mode, best_rank, best_idx, winner_counts


def best_rank_curve(
    matrix: ScoreMatrix,
    model: str,
    n_max: int,
    aggregation: str = MEAN_RANK,
    tie_policy: str = TIE_COMPETITION,
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
) -> CherryPickCurve:
    """Best achievable rank (with witness subset) for one model at each size.

    Witness ties break toward the largest aggregate gap to the runner-up,
    then the lowest bitmask.
    """
    try:
        row = matrix.model_row(model)
    except KeyError:
        raise UnknownModel(f"model {model!r} not in matrix") from None
    if not 1 <= n_max <= matrix.n_datasets:
        raise InvalidSize(f"n_max {n_max} must be in [1, {matrix.n_datasets}]")
    values = aggregation_values(matrix, aggregation)
    entries = []
    for n in range(1, n_max + 1):
        masks, _, best_rank, best_idx, _ = _pass_for_size(
            matrix, values, n, tie_policy, budget, seed
        )
        witness = masks[int(best_idx[row])]
        outcome = rank_on_subset(matrix, witness, aggregation, tie_policy)
        entries.append(
            CurveEntry(n, float(best_rank[row]), witness, outcome.ranks)
        )
    return CherryPickCurve(model, matrix.model_ids, tuple(entries))


def top_k_reportable(
    matrix: ScoreMatrix,
    n: int,
    k: int,
    aggregation: str = MEAN_RANK,
    tie_policy: str = TIE_COMPETITION,
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
) -> float:
    """Fraction of models some size-n subset puts at rank <= k."""
    if not 1 <= n <= matrix.n_datasets:
        raise InvalidSize(f"n {n} must be in [1, {matrix.n_datasets}]")
    if not 1 <= k <= matrix.n_models:
        raise InvalidSize(f"k {k} must be in [1, {matrix.n_models}]")
    values = aggregation_values(matrix, aggregation)
    _, _, best_rank, _, _ = _pass_for_size(
        matrix, values, n, tie_policy, budget, seed
    )
    return float(np.count_nonzero(best_rank <= k) / matrix.n_models)


def misidentification_risk(
    matrix: ScoreMatrix,
    n: int,
    aggregation: str = MEAN_RANK,
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
) -> float:
    """Fraction of size-n subsets whose deterministic winner is not the
    deterministic baseline winner."""
    if not 1 <= n <= matrix.n_datasets:
        raise InvalidSize(f"n {n} must be in [1, {matrix.n_datasets}]")
    values = aggregation_values(matrix, aggregation)
    baseline_winner = rank_on_subset(
        matrix, full_subset_mask(matrix), aggregation
    ).winner
    _, _, _, _, winner_counts = _pass_for_size(
        matrix, values, n, TIE_COMPETITION, budget, seed
    )
    total = int(winner_counts.sum())
    agree = int(winner_counts[matrix.model_row(baseline_winner)])
    return float((total - agree) / total)


def run_audit(matrix: ScoreMatrix, config: AuditConfig) -> AuditReport:
    """Assemble the full audit: baseline, curves, top-k table, risk curve.

    A single subset sweep per size feeds every statistic, so the standalone
    operations and the report always agree.
    """
    if matrix.n_models < 1:
        raise InvalidSize("matrix has no models")
    if not 1 <= config.n_max <= matrix.n_datasets:
        raise InvalidSize(
            f"n_max {config.n_max} must be in [1, {matrix.n_datasets}]"
        )
    for k in config.k_values:
        if not 1 <= k <= matrix.n_models:
            raise InvalidSize(f"k {k} must be in [1, {matrix.n_models}]")

    values = aggregation_values(matrix, config.aggregation)
    baseline = baseline_ranking(
        matrix, config.aggregation, config.distribution_tie_policy
    )
    baseline_winner_row = matrix.model_row(baseline.winner)

    per_model_entries = {model: [] for model in matrix.model_ids}
    top_k_table = {}
    risk_curve = {}
    modes = {}
    for n in range(1, config.n_max + 1):
        masks, mode, best_rank, best_idx, winner_counts = _pass_for_size(
            matrix, values, n, config.search_tie_policy, config.budget,
            config.seed,
        )
        mode_info = {"mode": mode, "count": len(masks)}
        if mode == "sampled":
            mode_info["seed"] = config.seed
            mode_info["sample_count"] = len(masks)
        modes[n] = mode_info

        outcome_cache = {}
        for row, model in enumerate(matrix.model_ids):
            witness = masks[int(best_idx[row])]
            if witness not in outcome_cache:
                outcome_cache[witness] = rank_on_subset(
                    matrix, witness, config.aggregation, config.search_tie_policy
                )
            per_model_entries[model].append(
                CurveEntry(
                    n, float(best_rank[row]), witness,
                    outcome_cache[witness].ranks,
                )
            )

        top_k_table[n] = {
            k: float(np.count_nonzero(best_rank <= k) / matrix.n_models)
            for k in config.k_values
        }
        total = int(winner_counts.sum())
        agree = int(winner_counts[baseline_winner_row])
        risk_curve[n] = float((total - agree) / total)

    curves = tuple(
        CherryPickCurve(model, matrix.model_ids, tuple(per_model_entries[model]))
        for model in matrix.model_ids
    )
    return AuditReport(
        config=config,
        model_ids=matrix.model_ids,
        dataset_names=matrix.dataset_names,
        baseline=baseline,
        curves=curves,
        top_k_table=top_k_table,
        risk_curve=risk_curve,
        modes=modes,
    )

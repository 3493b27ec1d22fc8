"""NumPy implementation of the subset-evaluation kernel.

Fallback used when the compiled extension is unavailable. The floating-point
operation order is kept identical to the compiled kernel (sequential column
accumulation, same gap/rank formulas) so both backends return bit-identical
results.
"""

from __future__ import annotations

import numpy as np

TIE_AVERAGE = 0
TIE_COMPETITION = 1
TIE_DETERMINISTIC = 2

_CHUNK = 2048


def audit_pass(values, colidx, tie_policy):
    """Evaluate every subset in ``colidx`` against the ``values`` matrix.

    values: (m, N) float64 per-model per-dataset aggregation inputs
            (within-column ranks for mean_rank, raw scores for mean_score).
    colidx: (S, n) intp column indices, one row per subset, rows ordered by
            ascending bitmask so row index doubles as the lexicographic key.
    tie_policy: rank convention for the per-model best-rank search.

    Returns (best_rank[m], best_idx[m], best_gap[m], winner_counts[m]) where
    best_idx is the witness row (min rank, then max winning gap, then lowest
    row index) and winner_counts tallies the deterministic per-subset winner.
    """
    values = np.ascontiguousarray(values, dtype=np.float64)
    colidx = np.ascontiguousarray(colidx, dtype=np.intp)
    m = values.shape[0]
    S, n = colidx.shape

    best_rank = np.full(m, np.inf)
    best_gap = np.full(m, -np.inf)
    best_idx = np.full(m, -1, dtype=np.intp)
    winner_counts = np.zeros(m, dtype=np.intp)

    lower_tri = np.tril(np.ones((m, m), dtype=bool), k=-1)

    for start in range(0, S, _CHUNK):
        chunk = colidx[start:start + _CHUNK]
        # Sequential accumulation in column order matches the compiled kernel.
        acc = values[:, chunk[:, 0]].copy()
        for j in range(1, n):
            acc += values[:, chunk[:, j]]
        agg = (acc / n).T  # (chunk_size, m)

        winners = np.argmin(agg, axis=1)
        np.add.at(winner_counts, winners, 1)

        # pairwise[s, i, j] compares model j against model i within subset s
        less = agg[:, None, :] < agg[:, :, None]
        eq = agg[:, None, :] == agg[:, :, None]
        c_less = less.sum(axis=2)
        if tie_policy == TIE_AVERAGE:
            c_eq = eq.sum(axis=2)
            ranks = c_less + (c_eq + 1) * 0.5
        elif tie_policy == TIE_COMPETITION:
            ranks = (c_less + 1).astype(np.float64)
        else:
            c_eq_before = (eq & lower_tri).sum(axis=2)
            ranks = (c_less + c_eq_before + 1).astype(np.float64)

        if m == 1:
            gaps = np.full_like(agg, np.inf)
        else:
            two_smallest = np.partition(agg, 1, axis=1)[:, :2]
            is_first_min = np.arange(m)[None, :] == winners[:, None]
            other_min = np.where(
                is_first_min, two_smallest[:, 1:2], two_smallest[:, 0:1]
            )
            gaps = other_min - agg

        for i in range(m):
            r = ranks[:, i]
            rmin = r.min()
            cand = np.flatnonzero(r == rmin)
            g = gaps[cand, i]
            gmax = g.max()
            row = int(cand[g == gmax][0])
            if (
                rmin < best_rank[i]
                or (rmin == best_rank[i] and gmax > best_gap[i])
            ):
                best_rank[i] = rmin
                best_gap[i] = gmax
                best_idx[i] = start + row

    return best_rank, best_idx, best_gap, winner_counts

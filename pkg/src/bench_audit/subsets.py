"""Deterministic enumeration and sampling of fixed-size dataset subsets.

Subsets are bitmasks over dataset column positions, emitted in ascending
numeric (bitmask) order. When the exact count C(N, n) exceeds the budget,
a seeded uniform sample without replacement is drawn instead.
"""

from __future__ import annotations

import math
import random

import numpy as np

from .errors import InvalidSize

EXACT = "exact"
SAMPLED = "sampled"


def _gosper_masks(N: int, n: int):
    """All n-bit-popcount masks below 2**N, ascending (Gosper's hack)."""
    masks = []
    mask = (1 << n) - 1
    limit = 1 << N
    while mask < limit:
        masks.append(mask)
        c = mask & -mask
        r = mask + c
        mask = (((r ^ mask) >> 2) // c) | r
    return masks


def _unrank_combination(rank: int, N: int, n: int):
    """Lexicographic unranking of the rank-th n-combination of range(N)."""
    combo = []
    start = 0
    remaining = n
    for _ in range(n):
        for c in range(start, N):
            block = math.comb(N - c - 1, remaining - 1)
            if rank < block:
                combo.append(c)
                start = c + 1
                remaining -= 1
                break
            rank -= block
    return combo


def mask_to_columns(mask: int):
    """Bit positions set in the mask, ascending."""
    cols = []
    pos = 0
    while mask:
        if mask & 1:
            cols.append(pos)
        mask >>= 1
        pos += 1
    return cols


def columns_to_mask(cols) -> int:
    mask = 0
    for c in cols:
        mask |= 1 << c
    return mask


def enumerate_subsets(N: int, n: int, budget: int, seed: int):
    """Return (masks, mode): every size-n subset when C(N, n) fits the
    budget, otherwise ``budget`` distinct subsets sampled uniformly.

    The emitted sequence depends only on (N, n, budget, seed).
    """
    if n < 1 or n > N:
        raise InvalidSize(f"subset size {n} must be in [1, {N}]")
    if budget < 1:
        raise InvalidSize(f"budget {budget} must be positive")
    total = math.comb(N, n)
    if total <= budget:
        return _gosper_masks(N, n), EXACT
    rng = random.Random(seed)
    ranks = sorted(rng.sample(range(total), budget))
    masks = sorted(
        columns_to_mask(_unrank_combination(r, N, n)) for r in ranks
    )
    return masks, SAMPLED


def masks_to_column_array(masks) -> np.ndarray:
    """Stack subsets into an int64 (num_subsets, n) column-index array."""
    return np.array([mask_to_columns(m) for m in masks], dtype=np.int64)

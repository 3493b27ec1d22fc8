# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled subset-evaluation kernel.

Semantics match ``_pykernels.audit_pass`` exactly, including the order of
floating-point accumulation, so both backends are bit-identical.
"""

import numpy as np

from libc.math cimport INFINITY

TIE_AVERAGE = 0
TIE_COMPETITION = 1
TIE_DETERMINISTIC = 2


def audit_pass(values, colidx, int tie_policy):
    values = np.ascontiguousarray(values, dtype=np.float64)
    colidx = np.ascontiguousarray(colidx, dtype=np.intp)

    cdef double[:, ::1] v = values
    cdef Py_ssize_t[:, ::1] cols = colidx
    cdef Py_ssize_t m = v.shape[0]
    cdef Py_ssize_t S = cols.shape[0]
    cdef Py_ssize_t n = cols.shape[1]

    best_rank_arr = np.full(m, np.inf)
    best_gap_arr = np.full(m, -np.inf)
    best_idx_arr = np.full(m, -1, dtype=np.intp)
    winner_arr = np.zeros(m, dtype=np.intp)
    agg_arr = np.empty(m)

    cdef double[::1] best_rank = best_rank_arr
    cdef double[::1] best_gap = best_gap_arr
    cdef Py_ssize_t[::1] best_idx = best_idx_arr
    cdef Py_ssize_t[::1] winner_counts = winner_arr
    cdef double[::1] agg = agg_arr

    cdef Py_ssize_t s, i, j, col, w, min1_i
    cdef Py_ssize_t c_less, c_eq, c_eq_before
    cdef double a, min1, min2, other_min, rank, gap

    for s in range(S):
        for i in range(m):
            agg[i] = 0.0
        for j in range(n):
            col = cols[s, j]
            for i in range(m):
                agg[i] += v[i, col]
        for i in range(m):
            agg[i] /= n

        # deterministic winner: argmin with first-occurrence ties
        w = 0
        for i in range(1, m):
            if agg[i] < agg[w]:
                w = i
        winner_counts[w] += 1

        # two smallest aggregates for the winning-gap tiebreak
        min1 = INFINITY
        min2 = INFINITY
        min1_i = -1
        for i in range(m):
            if agg[i] < min1:
                min2 = min1
                min1 = agg[i]
                min1_i = i
            elif agg[i] < min2:
                min2 = agg[i]

        for i in range(m):
            a = agg[i]
            c_less = 0
            c_eq = 0
            c_eq_before = 0
            for j in range(m):
                if agg[j] < a:
                    c_less += 1
                elif agg[j] == a:
                    c_eq += 1
                    if j < i:
                        c_eq_before += 1
            if tie_policy == 0:
                rank = c_less + (c_eq + 1) * 0.5
            elif tie_policy == 1:
                rank = c_less + 1
            else:
                rank = c_less + c_eq_before + 1

            if m == 1:
                gap = INFINITY
            else:
                other_min = min2 if i == min1_i else min1
                gap = other_min - a

            if rank < best_rank[i] or (rank == best_rank[i] and gap > best_gap[i]):
                best_rank[i] = rank
                best_gap[i] = gap
                best_idx[i] = s

    return best_rank_arr, best_idx_arr, best_gap_arr, winner_arr

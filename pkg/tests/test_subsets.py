import math

import pytest

from bench_audit.errors import InvalidSize
from bench_audit.subsets import (
    columns_to_mask,
    enumerate_subsets,
    mask_to_columns,
    masks_to_column_array,
)


class TestExactEnumeration:
    def test_c_4_2(self):
        masks, mode = enumerate_subsets(4, 2, 100, 0)
        assert mode == "exact"
        assert len(masks) == 6
        assert len(set(masks)) == 6

    def test_c_13_4(self):
        masks, mode = enumerate_subsets(13, 4, 1000, 0)
        assert mode == "exact"
        assert len(masks) == math.comb(13, 4) == 715

    def test_ascending_bitmask_order(self):
        masks, _ = enumerate_subsets(6, 3, 100, 0)
        assert masks == sorted(masks)
        assert all(bin(m).count("1") == 3 for m in masks)

    def test_boundary_exact_at_budget(self):
        masks, mode = enumerate_subsets(4, 2, 6, 0)
        assert mode == "exact" and len(masks) == 6


class TestSampledEnumeration:
    def test_sampled_distinct_and_reproducible(self):
        a, mode_a = enumerate_subsets(30, 15, 1000, 42)
        b, mode_b = enumerate_subsets(30, 15, 1000, 42)
        assert mode_a == mode_b == "sampled"
        assert len(a) == 1000
        assert len(set(a)) == 1000
        assert a == b
        assert all(bin(m).count("1") == 15 for m in a)

    def test_different_seeds_differ(self):
        a, _ = enumerate_subsets(30, 10, 500, 1)
        b, _ = enumerate_subsets(30, 10, 500, 2)
        assert a != b

    def test_samples_within_range(self):
        masks, _ = enumerate_subsets(20, 5, 100, 7)
        assert all(0 < m < (1 << 20) for m in masks)


class TestValidation:
    def test_n_too_large(self):
        with pytest.raises(InvalidSize):
            enumerate_subsets(4, 5, 100, 0)

    def test_n_zero(self):
        with pytest.raises(InvalidSize):
            enumerate_subsets(4, 0, 100, 0)


class TestMaskHelpers:
    def test_round_trip(self):
        for cols in ([0], [1, 3], [0, 2, 5], list(range(8))):
            assert mask_to_columns(columns_to_mask(cols)) == cols

    def test_column_array(self):
        arr = masks_to_column_array([0b011, 0b101])
        assert arr.tolist() == [[0, 1], [0, 2]]

import math

import numpy as np
import pytest
from numpy.testing import assert_array_equal

from ldpc_lattices.design.peg import peg_construct, peg_construct_triangular
from ldpc_lattices.design.splitting import (
    ParentMapping,
    SplitResult,
    check_split,
    create_parent_mapping,
    create_parent_mapping_triangular,
    peg_check_split,
    triangular_peg_check_split,
    verify_split,
)
from ldpc_lattices.encoders.alt import is_alt_form
from ldpc_lattices.errors import InfeasibleMappingError
from ldpc_lattices.matrix.linalg import gf2_rank
from ldpc_lattices.matrix.sparse import SparseBinaryIntMatrix
from ldpc_lattices.matrix.tanner import girth

M = SparseBinaryIntMatrix.from_dense


class TestParentMapping:
    def test_single_row(self):
        B = M([[1] * 8], 2)
        assert create_parent_mapping(B, 2).parents == (0, 0)

    def test_heavier_row_first(self):
        B = M([[1, 1, 1, 1, 1, 1, 0, 0], [0, 0, 0, 0, 0, 0, 1, 1]], 2)
        assert create_parent_mapping(B, 3).parents == (0, 1, 0)

    def test_identity(self, split_example):
        B = split_example["H"][1]
        assert create_parent_mapping(B, 2).parents == (0, 1)

    def test_too_few_children(self):
        with pytest.raises(ValueError):
            create_parent_mapping(M([[1, 1], [1, 0]], 2), 1)

    def test_coupling_and_back(self):
        mapping = ParentMapping((0, 1, 0, 1), 2)
        F = mapping.coupling()
        assert_array_equal(F.to_dense(), [[1, 0, 1, 0], [0, 1, 0, 1]])
        assert ParentMapping.from_coupling(F) == mapping
        assert mapping.preimage(1) == (1, 3)

    def test_orphan_parent(self):
        with pytest.raises(ValueError):
            ParentMapping((0, 0, 0), 2)

    def test_triangular_mapping_covers_diagonal(self):
        # upper orientation: column i - g must hold the parent of child i
        B = M([[1, 1, 1, 1]], 2)
        mapping = create_parent_mapping_triangular(B, 0, 2)
        assert mapping.parents == (0, 0)

    def test_triangular_mapping_infeasible(self):
        B = M([[1, 0, 1], [0, 0, 1]], 2)
        with pytest.raises(InfeasibleMappingError):
            create_parent_mapping_triangular(B, 1, 4)


class TestVerifySplit:
    def test_example_chain(self, split_example):
        H0, H1, H2 = split_example["H"]
        F1, F2 = split_example["F"]
        assert verify_split(H1, SplitResult(H0, F1, ParentMapping.from_coupling(F1)))
        assert verify_split(H2, SplitResult(H1, F2, ParentMapping.from_coupling(F2)))

    def test_moved_entry(self, split_example):
        H0, H1, _ = split_example["H"]
        F1 = split_example["F"][0]
        dense = H0.to_dense()
        dense[0, 3], dense[0, 2] = 0, 1
        broken = SplitResult(M(dense, 2), F1, ParentMapping.from_coupling(F1))
        assert not verify_split(H1, broken)

    def test_swapped_children(self, split_example):
        H0, H1, _ = split_example["H"]
        F1 = split_example["F"][0]
        H = H0.permute([1, 0, 2, 3])
        F = F1.permute(None, [1, 0, 2, 3])
        assert verify_split(H1, SplitResult(H, F, ParentMapping.from_coupling(F)))


def _check(B, result, m):
    assert verify_split(B, result)
    assert result.H.rows == m
    assert_array_equal(result.H.col_weights(), B.col_weights())
    assert girth(result.H) >= girth(B)
    assert gf2_rank(result.H) == m


class TestCheckSplit:
    def test_all_ones_row(self):
        B = M([[1] * 8], 2)
        result = peg_check_split(B, 2, seed=1)
        _check(B, result, 2)
        assert_array_equal(result.H.row_weights(), [4, 4])
        assert_array_equal(result.F.to_dense(), [[1, 1]])

    def test_two_rows_into_four(self, split_example):
        B = split_example["H"][1]
        result = peg_check_split(B, 4, seed=1)
        _check(B, result, 4)
        assert_array_equal(result.H.row_weights(), [2, 2, 2, 2])
        # two children per parent
        assert_array_equal(result.F.row_weights(), [2, 2])
        assert_array_equal(result.F.col_weights(), [1, 1, 1, 1])

    def test_no_split(self, split_example):
        B = split_example["H"][1]
        result = peg_check_split(B, 2, seed=1)
        assert result.H == B
        assert_array_equal(result.F.to_dense(), np.eye(2))

    def test_plain_split(self):
        B = peg_construct(64, 8, 3, seed=4)
        _check(B, check_split(B, 24, seed=4), 24)

    def test_random_splits(self):
        for seed in range(12):
            B = peg_construct(48 + 8 * seed, 6, 3, seed=seed)
            m = 6 + 2 * (seed % 5) + 4
            _check(B, peg_check_split(B, m, seed=seed), m)

    @pytest.mark.slow
    def test_property_suite(self):
        for seed in range(100):
            rng = np.random.default_rng(seed)
            n = int(rng.integers(64, 513))
            b = int(rng.integers(4, n // 16 + 2))
            B = peg_construct(n, b, 3, seed=seed)
            m = int(rng.integers(b, n // 2))
            _check(B, peg_check_split(B, m, seed=seed), m)


class TestTriangularSplit:
    def test_single_row_zero_gap(self):
        B = M([[1, 1, 1, 1]], 2)
        result = triangular_peg_check_split(B, 0, 2, seed=1)
        _check(B, result, 2)
        assert is_alt_form(result.H, 0)
        dense = result.H.to_dense()
        # stored lower orientation: triangle columns 2, 3 start at rows 0, 1
        assert dense[0, 2] == 1 and dense[1, 3] == 1
        assert dense[0, 3] == 0

    def test_gap_equals_rows(self):
        B = peg_construct_triangular(40, 6, 3, g=6, seed=2)
        result = triangular_peg_check_split(B, 6, 6, seed=2)
        assert result.H == B

    def test_preserves_gap(self):
        g = 4
        B = peg_construct_triangular(120, 12, 3, g=g, seed=5)
        result = triangular_peg_check_split(B, g, 48, seed=5)
        _check(B, result, 48)
        assert is_alt_form(result.H, g)

    @pytest.mark.slow
    def test_design_point(self):
        B = peg_construct_triangular(1000, 22, 3, g=22, seed=1)
        result = triangular_peg_check_split(B, 22, 500, seed=1)
        assert is_alt_form(result.H, 22)
        assert_array_equal(result.H.col_weights(), np.full(1000, 3))
        assert math.isinf(girth(B)) or girth(result.H) >= girth(B)

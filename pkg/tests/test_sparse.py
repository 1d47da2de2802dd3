import numpy as np
import pytest
import scipy.sparse as sp
from numpy.testing import assert_array_equal

from ldpc_lattices.errors import DimensionError
from ldpc_lattices.matrix.sparse import (
    SparseBinaryIntMatrix,
    int_matmul,
    int_matmul_mod,
)

M = SparseBinaryIntMatrix.from_dense


class TestSparseBinaryIntMatrix:
    def test_supports(self):
        A = M([[1, 1, 0], [0, 1, 1]], 2)
        assert A.row_supports() == [[0, 1], [1, 2]]
        assert A.col_supports() == [[0], [0, 1], [1]]
        assert_array_equal(A.row_weights(), [2, 2])
        assert_array_equal(A.col_weights(), [1, 2, 1])

    def test_from_supports_matches_dense(self):
        A = SparseBinaryIntMatrix.from_supports((2, 4), [[0, 3], [1]])
        assert A == M([[1, 0, 0, 1], [0, 1, 0, 0]], 2)

    def test_from_supports_with_values(self):
        A = SparseBinaryIntMatrix.from_supports(
            (1, 4), [[0, 1, 2, 3]], [[3, 1, 3, 1]], modulus=4
        )
        assert A.entries() == {(0, 0): 3, (0, 1): 1, (0, 2): 3, (0, 3): 1}
        assert not A.is_binary

    def test_modulus_reduces_entries(self):
        A = M([[5, 2, 7]], 4)
        assert_array_equal(A.to_dense(), [[1, 2, 3]])
        assert_array_equal(A.mod2().to_dense(), [[1, 0, 1]])

    def test_modulus_must_be_power_of_two(self):
        with pytest.raises(ValueError):
            M([[1]], 6)

    def test_negative_entries_rejected(self):
        with pytest.raises(ValueError):
            M([[-1, 1]])

    def test_immutable(self):
        A = M([[1, 0], [0, 1]], 2)
        with pytest.raises(ValueError):
            A.csr.data[0] = 5

    def test_flip(self):
        A = M([[1, 0, 0], [1, 1, 0]], 2)
        assert_array_equal(A.flip().to_dense(), [[0, 1, 1], [0, 0, 1]])
        assert A.flip().flip() == A

    def test_permute(self):
        A = M([[1, 2], [3, 0]])
        assert_array_equal(A.permute([1, 0], [1, 0]).to_dense(), [[0, 3], [2, 1]])

    def test_matvec_is_exact(self):
        A = M([[3, 1, 3, 1]], 4)
        assert_array_equal(A.matvec([1, 3, 7, 5]), [3 + 3 + 21 + 5])

    def test_matvec_checks_length(self):
        with pytest.raises(DimensionError):
            M([[1, 1]], 2).matvec([1, 1, 1])

    def test_hash_follows_equality(self):
        A = M([[1, 0, 1]], 2)
        B = SparseBinaryIntMatrix.from_supports((1, 3), [[0, 2]])
        assert A == B
        assert hash(A) == hash(B)

    def test_hash_sees_row_split(self):
        # same entries and column indices, split differently across the rows
        A = M([[1, 1], [0, 0]], 2)
        B = M([[1, 0], [0, 1]], 2)
        C = M([[0, 0], [1, 1]], 2)
        assert A != C
        assert len({hash(A), hash(B), hash(C)}) == 3

    def test_hash_ignores_index_dtype(self):
        dense = np.array([[1, 0, 1], [0, 1, 1]])
        A = M(dense, 2)
        csr = sp.csr_matrix(dense)
        B = M(
            sp.csr_matrix(
                (csr.data, csr.indices.astype(np.int64), csr.indptr.astype(np.int64)),
                shape=csr.shape,
            ),
            2,
        )
        assert A == B
        assert hash(A) == hash(B)


class TestIntMatmul:
    def test_generalized_example_level_one(self):
        F1 = M([[2, 7, 4], [11, 9, 6]])
        H0 = M([[1, 1, 1, 1], [1, 0, 1, 0], [1, 1, 0, 0]], 2)
        H1 = int_matmul_mod(F1, H0, 2)
        assert_array_equal(H1.to_dense(), [[1, 0, 1, 0], [0, 1, 0, 1]])

    def test_generalized_example_level_two(self):
        F2 = M([[3, 5]])
        H1 = M([[1, 0, 1, 0], [0, 1, 0, 1]], 2)
        H2 = int_matmul_mod(F2, H1, 4)
        assert_array_equal(H2.to_dense(), [[3, 1, 3, 1]])
        assert H2.modulus == 4

    def test_identity_reduces_mod_two(self):
        H = M([[3, 2, 1], [0, 5, 4]])
        assert_array_equal(
            int_matmul_mod(SparseBinaryIntMatrix.identity(2), H, 2).to_dense(),
            [[1, 0, 1], [0, 1, 0]],
        )

    def test_reduction_is_consistent(self, rng):
        F = M(rng.integers(0, 16, size=(3, 5)))
        H = M(rng.integers(0, 16, size=(5, 7)))
        for q in (2, 4, 8):
            fine = int_matmul_mod(F, H, 2 * q).reduce(q)
            assert fine == int_matmul_mod(F, H, q)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            int_matmul_mod(M([[1, 1]]), M([[1, 1]]), 2)

    def test_unreduced_product(self):
        F = M([[1, 1]])
        H = M([[1, 1, 0], [0, 1, 1]])
        assert_array_equal(int_matmul(F, H).to_dense(), [[1, 2, 1]])
        assert int_matmul(F, H).modulus is None

"""Sparse matrices with small nonnegative integer entries.

A single type carries binary parity-check matrices, coupling matrices and the
lifted mod-2^l matrices of the generalized construction. Matrices are immutable
once built, so they can be shared between concurrent decoders.
"""
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import scipy.sparse as sp

from ..errors import DimensionError


def _is_power_of_two(value: int) -> bool:
    return value >= 2 and value & (value - 1) == 0


class SparseBinaryIntMatrix:
    """Row/column indexed sparse integer matrix, doubling as a Tanner graph.

    Entries are stored in CSR form with int64 values; the column view (CSC) is
    derived on demand. A `modulus` tag records the ring the entries live in:
    `2` for binary parity-check matrices, `2**(l+1)` for the lifted matrix of
    level `l`, `None` for plain integer matrices such as couplings.

    Attributes:
        modulus {int | None} -- entries are reduced into [0, modulus)
    """

    __slots__ = ("_csr", "_csc", "modulus")

    def __init__(self, matrix, modulus: Optional[int] = None):
        if modulus is not None and not _is_power_of_two(modulus):
            raise ValueError(f"modulus must be a power of two, got {modulus}")

        csr = sp.csr_matrix(matrix, dtype=np.int64, copy=True)
        csr.sum_duplicates()
        if modulus is not None:
            csr.data %= modulus
        if np.any(csr.data < 0):
            raise ValueError("entries must be nonnegative")
        csr.eliminate_zeros()
        csr.sort_indices()

        for array in (csr.data, csr.indices, csr.indptr):
            array.flags.writeable = False

        self._csr = csr
        self._csc = None
        self.modulus = modulus

    @classmethod
    def from_dense(cls, array, modulus: Optional[int] = None):
        return cls(np.asarray(array, dtype=np.int64), modulus)

    @classmethod
    def from_supports(
        cls,
        shape: Tuple[int, int],
        row_supports: Sequence[Iterable[int]],
        values: Optional[Sequence[Iterable[int]]] = None,
        modulus: Optional[int] = 2,
    ):
        """Build a matrix from the per-row sets J_i of nonzero columns.

        Arguments:
            shape {tuple} -- (m, n)
            row_supports {list} -- column indices per row

        Keyword Arguments:
            values {list} -- entry values per row, all ones when omitted
            modulus {int} -- ring tag (default: {2})
        """
        m, n = shape
        if len(row_supports) != m:
            raise DimensionError(f"expected {m} row supports, got {len(row_supports)}")

        rows: List[int] = []
        cols: List[int] = []
        data: List[int] = []
        for i, support in enumerate(row_supports):
            support = list(support)
            rows.extend([i] * len(support))
            cols.extend(support)
            if values is None:
                data.extend([1] * len(support))
            else:
                data.extend(values[i])

        coo = sp.coo_matrix(
            (np.asarray(data, dtype=np.int64), (rows, cols)), shape=(m, n)
        )
        return cls(coo, modulus)

    @classmethod
    def zeros(cls, m: int, n: int, modulus: Optional[int] = 2):
        return cls(sp.csr_matrix((m, n), dtype=np.int64), modulus)

    @classmethod
    def identity(cls, n: int, modulus: Optional[int] = 2):
        return cls(sp.identity(n, dtype=np.int64, format="csr"), modulus)

    @property
    def csr(self) -> sp.csr_matrix:
        return self._csr

    @property
    def csc(self) -> sp.csc_matrix:
        if self._csc is None:
            csc = self._csr.tocsc()
            csc.sort_indices()
            for array in (csc.data, csc.indices, csc.indptr):
                array.flags.writeable = False
            self._csc = csc
        return self._csc

    @property
    def shape(self) -> Tuple[int, int]:
        return self._csr.shape

    @property
    def rows(self) -> int:
        return self._csr.shape[0]

    @property
    def cols(self) -> int:
        return self._csr.shape[1]

    @property
    def nnz(self) -> int:
        return self._csr.nnz

    @property
    def is_binary(self) -> bool:
        return bool(np.all(self._csr.data == 1))

    def row_support(self, i: int) -> np.ndarray:
        """J_i: sorted column indices of the nonzero entries of row `i`."""
        indptr = self._csr.indptr
        return self._csr.indices[indptr[i] : indptr[i + 1]]

    def col_support(self, j: int) -> np.ndarray:
        """I_j: sorted row indices of the nonzero entries of column `j`."""
        indptr = self.csc.indptr
        return self.csc.indices[indptr[j] : indptr[j + 1]]

    def row_supports(self) -> List[List[int]]:
        return [self.row_support(i).tolist() for i in range(self.rows)]

    def col_supports(self) -> List[List[int]]:
        return [self.col_support(j).tolist() for j in range(self.cols)]

    def row_values(self, i: int) -> np.ndarray:
        indptr = self._csr.indptr
        return self._csr.data[indptr[i] : indptr[i + 1]]

    def entries(self) -> Dict[Tuple[int, int], int]:
        coo = self._csr.tocoo()
        return {
            (int(i), int(j)): int(v) for i, j, v in zip(coo.row, coo.col, coo.data)
        }

    def entry(self, i: int, j: int) -> int:
        return int(self._csr[i, j])

    def row_weights(self) -> np.ndarray:
        return np.diff(self._csr.indptr)

    def col_weights(self) -> np.ndarray:
        return np.diff(self.csc.indptr)

    def to_dense(self) -> np.ndarray:
        return self._csr.toarray()

    def mod2(self) -> "SparseBinaryIntMatrix":
        """phi(M): the binary matrix of entries reduced mod 2."""
        if self.modulus == 2:
            return self
        return SparseBinaryIntMatrix(self._csr, 2)

    def reduce(self, modulus: int) -> "SparseBinaryIntMatrix":
        return SparseBinaryIntMatrix(self._csr, modulus)

    def transpose(self) -> "SparseBinaryIntMatrix":
        return SparseBinaryIntMatrix(self._csr.T, self.modulus)

    def permute(
        self,
        row_perm: Optional[Sequence[int]] = None,
        col_perm: Optional[Sequence[int]] = None,
    ) -> "SparseBinaryIntMatrix":
        """Reorder rows and columns: new[i, j] = old[row_perm[i], col_perm[j]]."""
        csr = self._csr
        if row_perm is not None:
            csr = csr[np.asarray(row_perm, dtype=np.int64), :]
        if col_perm is not None:
            csr = csr[:, np.asarray(col_perm, dtype=np.int64)]
        return SparseBinaryIntMatrix(csr, self.modulus)

    def flip(self) -> "SparseBinaryIntMatrix":
        """Up-down and left-right flip, mapping lower to upper triangular form."""
        return self.permute(
            np.arange(self.rows - 1, -1, -1), np.arange(self.cols - 1, -1, -1)
        )

    def matvec(self, vector) -> np.ndarray:
        """Exact integer product M v."""
        vector = np.asarray(vector, dtype=np.int64)
        if vector.shape[0] != self.cols:
            raise DimensionError(
                f"vector of length {vector.shape[0]} against {self.cols} columns"
            )
        return self._csr @ vector

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseBinaryIntMatrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        return (self._csr != other._csr).nnz == 0

    def __hash__(self):
        # index arrays may be int32 or int64 depending on construction
        arrays = (self._csr.indptr, self._csr.indices, self._csr.data)
        return hash((self.shape,) + tuple(a.astype(np.int64).tobytes() for a in arrays))

    def __repr__(self) -> str:
        return "SparseBinaryIntMatrix(%dx%d, nnz=%d, modulus=%s)" % (
            self.rows,
            self.cols,
            self.nnz,
            self.modulus,
        )


def int_matmul_mod(
    F: SparseBinaryIntMatrix, H: SparseBinaryIntMatrix, modulus: int
) -> SparseBinaryIntMatrix:
    """Integer product F H with every entry reduced into [0, modulus).

    Args:
        F (SparseBinaryIntMatrix): left factor, b x m
        H (SparseBinaryIntMatrix): right factor, m x n
        modulus (int): power of two

    Returns:
        SparseBinaryIntMatrix: the reduced product, tagged with `modulus`

    Raises:
        DimensionError: F.cols != H.rows
    """
    if F.cols != H.rows:
        raise DimensionError(f"cannot multiply {F.shape} by {H.shape}")
    if not _is_power_of_two(modulus):
        raise ValueError(f"modulus must be a power of two, got {modulus}")

    return SparseBinaryIntMatrix(F.csr @ H.csr, modulus)


def int_matmul(
    F: SparseBinaryIntMatrix, H: SparseBinaryIntMatrix
) -> SparseBinaryIntMatrix:
    """Exact integer product F H without reduction."""
    if F.cols != H.rows:
        raise DimensionError(f"cannot multiply {F.shape} by {H.shape}")
    return SparseBinaryIntMatrix(F.csr @ H.csr, None)

"""GF(2) elimination on bit-packed rows.

Rows are packed eight columns to a byte with `numpy.packbits`, so one row
operation is a single vectorised XOR over `ceil(n / 8)` bytes.
"""
from typing import List, NamedTuple, Optional, Union

import numpy as np

from ..errors import DimensionError, SingularMatrixError
from .sparse import SparseBinaryIntMatrix

MatrixLike = Union[SparseBinaryIntMatrix, np.ndarray]


class Echelon(NamedTuple):
    """Reduced row echelon form of a binary matrix.

    Attributes:
        matrix {np.ndarray} -- the reduced matrix, uint8
        pivots {list} -- pivot column of each nonzero row, increasing
        transform {np.ndarray | None} -- E with E M = matrix (mod 2), if requested
    """

    matrix: np.ndarray
    pivots: List[int]
    transform: Optional[np.ndarray]

    @property
    def rank(self) -> int:
        return len(self.pivots)


def as_bits(M: MatrixLike) -> np.ndarray:
    """Dense uint8 view of M reduced mod 2."""
    if isinstance(M, SparseBinaryIntMatrix):
        csr = M.mod2().csr
        return csr.astype(bool).toarray().astype(np.uint8)
    return (np.asarray(M, dtype=np.int64) & 1).astype(np.uint8)


def _bit(packed: np.ndarray, col: int) -> np.ndarray:
    return (packed[:, col >> 3] >> (7 - (col & 7))) & 1


def _eliminate(packed: np.ndarray, ncols: int, full: bool) -> List[int]:
    rows = packed.shape[0]
    pivots: List[int] = []
    r = 0

    for col in range(ncols):
        if r == rows:
            break

        hit = np.flatnonzero(_bit(packed[r:], col))
        if hit.size == 0:
            continue

        p = r + int(hit[0])
        if p != r:
            packed[[r, p]] = packed[[p, r]]

        if full:
            targets = np.flatnonzero(_bit(packed, col))
            targets = targets[targets != r]
        else:
            targets = r + 1 + np.flatnonzero(_bit(packed[r + 1 :], col))
        if targets.size:
            packed[targets] ^= packed[r]

        pivots.append(col)
        r += 1

    return pivots


def gf2_rank(M: MatrixLike) -> int:
    """Rank of M reduced mod 2, computed over GF(2). M is not modified."""
    bits = as_bits(M)
    if bits.size == 0:
        return 0
    # eliminate along the shorter side
    if bits.shape[0] > bits.shape[1]:
        bits = bits.T
    packed = np.packbits(bits, axis=1)
    return len(_eliminate(packed, bits.shape[1], full=False))


def gf2_rref(M: MatrixLike, transform: bool = False) -> Echelon:
    """Reduced row echelon form over GF(2).

    Args:
        M (MatrixLike): matrix, reduced mod 2 before elimination
        transform (bool, optional): also return E with E M = R. Defaults to False.

    Returns:
        Echelon: reduced matrix, pivot columns and optional transform
    """
    bits = as_bits(M)
    m, n = bits.shape
    if transform:
        bits = np.hstack([bits, np.eye(m, dtype=np.uint8)])

    packed = np.packbits(bits, axis=1)
    pivots = _eliminate(packed, n, full=True)
    reduced = np.unpackbits(packed, axis=1, count=bits.shape[1])

    if transform:
        return Echelon(reduced[:, :n], pivots, reduced[:, n:])
    return Echelon(reduced, pivots, None)


def gf2_inverse(A: MatrixLike) -> np.ndarray:
    """Inverse of a square binary matrix over GF(2).

    Raises:
        DimensionError: A is not square
        SingularMatrixError: A is singular mod 2
    """
    bits = as_bits(A)
    m, n = bits.shape
    if m != n:
        raise DimensionError(f"cannot invert a {m}x{n} matrix")

    echelon = gf2_rref(bits, transform=True)
    if echelon.rank != n:
        raise SingularMatrixError(f"matrix has rank {echelon.rank} < {n}")

    return echelon.transform


def gf2_matvec(A: np.ndarray, v: np.ndarray) -> np.ndarray:
    """A v over GF(2) for a dense binary A."""
    return (A.astype(np.int64) @ np.asarray(v, dtype=np.int64) & 1).astype(np.uint8)

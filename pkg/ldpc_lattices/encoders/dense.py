"""Coset encoding by Gauss-Jordan elimination.

Quadratic in n; used when no acceptable ALT form is found.
"""
import numpy as np

from ..errors import RankDeficiencyError
from ..matrix.linalg import gf2_matvec, gf2_rref
from ..matrix.sparse import SparseBinaryIntMatrix
from .base import CosetEncoder


class DenseEncoder(CosetEncoder):
    """Encoder from the reduced row echelon form R = E H.

    The message occupies the non-pivot columns; every pivot bit is the
    transformed syndrome E s plus the free part of its row.
    """

    name = "dense"

    def __init__(self, H: SparseBinaryIntMatrix):
        echelon = gf2_rref(H, transform=True)
        if echelon.rank != H.rows:
            raise RankDeficiencyError(
                f"parity-check matrix has rank {echelon.rank} < {H.rows}",
                rank=echelon.rank,
            )

        pivots = np.asarray(echelon.pivots, dtype=np.int64)
        free = np.setdiff1d(np.arange(H.cols), pivots)
        super().__init__(H, free)

        self.pivots = pivots
        self.transform = echelon.transform
        self.free_part = echelon.matrix[:, free]

    @classmethod
    def build(cls, H: SparseBinaryIntMatrix, **kwargs) -> "DenseEncoder":
        return cls(H)

    def encode(self, u: np.ndarray, s: np.ndarray) -> np.ndarray:
        u = np.asarray(u, dtype=np.uint8)
        s = np.asarray(s, dtype=np.uint8)
        self._check(u, s)

        c = np.zeros(self.n, dtype=np.uint8)
        c[self.message_positions] = u
        c[self.pivots] = gf2_matvec(self.transform, s) ^ gf2_matvec(self.free_part, u)
        return c

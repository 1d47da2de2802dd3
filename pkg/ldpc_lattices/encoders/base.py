"""Base coset encoder class."""
from abc import ABC, abstractmethod

import numpy as np

from ..errors import DimensionError
from ..matrix.sparse import SparseBinaryIntMatrix


class CosetEncoder(ABC):
    """Base Coset Encoder Class.

    An encoder solves phi(H) c = s (mod 2) for a binary c whose systematic
    positions carry the message u. Every encoder is registered by `name` in
    `encoders.utils.ENCODER_DICT` and built through its `build` classmethod.

    - encode -- coset codeword of (u, s)
    - extract_message -- u back from a codeword
    - satisfies -- syndrome check of a word

    Attributes:
        name {str} -- the name the encoder is registered under
        H {SparseBinaryIntMatrix} -- the binary parity-check matrix
        message_positions {np.ndarray} -- the k systematic coordinates
    """

    name = "base"

    def __init__(self, H: SparseBinaryIntMatrix, message_positions: np.ndarray):
        self.H = H.mod2()
        self.message_positions = np.asarray(message_positions, dtype=np.int64)

    @classmethod
    @abstractmethod
    def build(cls, H: SparseBinaryIntMatrix, **kwargs) -> "CosetEncoder":
        """Precompute everything needed to encode with H."""

    @property
    def n(self) -> int:
        return self.H.cols

    @property
    def m(self) -> int:
        return self.H.rows

    @property
    def k(self) -> int:
        return self.n - self.m

    def _check(self, u: np.ndarray, s: np.ndarray):
        if u.shape[0] != self.k:
            raise DimensionError(f"message of length {u.shape[0]}, expected {self.k}")
        if s.shape[0] != self.m:
            raise DimensionError(f"syndrome of length {s.shape[0]}, expected {self.m}")

    @abstractmethod
    def encode(self, u: np.ndarray, s: np.ndarray) -> np.ndarray:
        """Coset codeword c with phi(H) c = s (mod 2) and c[positions] = u."""

    def extract_message(self, c: np.ndarray) -> np.ndarray:
        return np.asarray(c, dtype=np.uint8)[self.message_positions]

    def satisfies(self, c: np.ndarray, s: np.ndarray) -> bool:
        return bool(np.array_equal(self.H.matvec(c) & 1, np.asarray(s) & 1))


def coset_encode(enc: CosetEncoder, u, s) -> np.ndarray:
    """Encode message `u` into the coset of syndrome `s`."""
    return enc.encode(np.asarray(u, dtype=np.uint8), np.asarray(s, dtype=np.uint8))

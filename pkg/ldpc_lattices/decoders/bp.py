"""Sum-product decoding of coset codes.

A coset code {c : H c = s (mod 2)} is decoded on the Tanner graph of H with
check node i targeting parity s_i: the outgoing message of a check flips sign
when s_i = 1. This is the same computation as decoding the lengthened code
[I H] with the first m positions pinned to s, which is kept as an option
(`lengthened=True`) for conformance checks.

Messages live on the edges of the graph, one row of edges per word, so a batch
of words is decoded by the same sparse products as a single one.
"""
from typing import NamedTuple, Optional

import numpy as np
import scipy.sparse as sp

from ..errors import DimensionError
from ..matrix.sparse import SparseBinaryIntMatrix
from ..utils.consts import BP_MAX_ITER, LLR_MAX
from ..utils.log import child_logger

log = child_logger(__name__)

_PHI_FLOOR = 1e-30


def phi(x: np.ndarray) -> np.ndarray:
    """phi(x) = -ln tanh(x / 2) = ln((e^x + 1) / (e^x - 1)); an involution."""
    x = np.maximum(x, _PHI_FLOOR)
    return np.log1p(2.0 / np.expm1(x))


class BpResult(NamedTuple):
    """Hard decision, syndrome check at exit and iterations used."""

    codeword: np.ndarray
    converged: bool
    iterations: int


class BeliefPropagationDecoder:
    """Flooding sum-product decoder for the cosets of one binary code.

    Attributes:
        H {SparseBinaryIntMatrix} -- binary parity-check matrix
        max_iter {int} -- iteration cap
        llr_max {float} -- saturation of channel values and messages
        lengthened {bool} -- decode on the literal graph of [I H]
    """

    def __init__(
        self,
        H: SparseBinaryIntMatrix,
        max_iter: int = BP_MAX_ITER,
        llr_max: float = LLR_MAX,
        lengthened: bool = False,
    ):
        self.H = H.mod2()
        self.max_iter = max_iter
        self.llr_max = llr_max
        self.lengthened = lengthened

        graph = self.H.csr
        if lengthened:
            graph = sp.hstack(
                [sp.identity(self.H.rows, dtype=np.int64, format="csr"), graph],
                format="csr",
            )
        coo = graph.tocoo()

        self._graph = graph
        self._edge_check = coo.row.astype(np.int64)
        self._edge_var = coo.col.astype(np.int64)

        edges = coo.nnz
        ones = np.ones(edges, dtype=np.float64)
        self._checks = sp.csr_matrix(
            (ones, (self._edge_check, np.arange(edges))), shape=(graph.shape[0], edges)
        )
        self._vars = sp.csr_matrix(
            (ones, (self._edge_var, np.arange(edges))), shape=(graph.shape[1], edges)
        )

    @property
    def n(self) -> int:
        return self.H.cols

    @property
    def m(self) -> int:
        return self.H.rows

    def _syndrome(self, hard: np.ndarray) -> np.ndarray:
        return (self._graph @ hard.T.astype(np.int64)).T & 1

    def decode(self, llr, s: Optional[np.ndarray] = None) -> BpResult:
        """Decode one word of the coset with syndrome `s` (zero when omitted)."""
        llr = np.asarray(llr, dtype=np.float64)
        s = np.zeros(self.m, np.uint8) if s is None else np.asarray(s, np.uint8)
        words, converged, iterations = self.decode_batch(llr[None, :], s[None, :])
        return BpResult(words[0], bool(converged[0]), int(iterations[0]))

    def decode_batch(self, llr: np.ndarray, s: np.ndarray):
        """Decode a batch of words, row `b` in the coset of syndrome `s[b]`.

        Args:
            llr (np.ndarray): channel LLRs, shape (batch, n)
            s (np.ndarray): syndromes, shape (batch, m)

        Returns:
            Tuple[np.ndarray, np.ndarray, np.ndarray]: uint8 decisions (batch, n),
            convergence flags and iterations used per word
        """
        llr = np.atleast_2d(np.asarray(llr, dtype=np.float64))
        s = np.atleast_2d(np.asarray(s, dtype=np.int64)) & 1
        if llr.shape[1] != self.n or s.shape[1] != self.m:
            raise DimensionError(
                f"llr {llr.shape} and syndrome {s.shape} against {self.H.shape}"
            )
        if s.shape[0] != llr.shape[0]:
            s = np.broadcast_to(s, (llr.shape[0], self.m))

        llr = np.clip(llr, -self.llr_max, self.llr_max)
        if self.lengthened:
            llr = np.hstack([(1.0 - 2.0 * s) * self.llr_max, llr])
            target = np.zeros_like(s)
        else:
            target = s
        flip = target[:, self._edge_check]

        hard = (llr < 0).astype(np.uint8)
        satisfied = np.all(self._syndrome(hard) == target, axis=1)
        iterations = np.zeros(llr.shape[0], dtype=np.int64)

        v2c = llr[:, self._edge_var]
        active = np.flatnonzero(~satisfied)
        for it in range(1, self.max_iter + 1):
            if active.size == 0:
                break

            msg = v2c[active]
            mag = phi(np.abs(msg))
            neg = (msg < 0).astype(np.float64)

            total_mag = (self._checks @ mag.T).T
            total_neg = (self._checks @ neg.T).T.astype(np.int64)

            ext_mag = np.maximum(total_mag[:, self._edge_check] - mag, 0.0)
            ext_neg = (total_neg[:, self._edge_check] - neg.astype(np.int64)) & 1
            ext_neg ^= flip[active]

            c2v = np.clip(
                np.where(ext_neg == 1, -1.0, 1.0) * phi(ext_mag),
                -self.llr_max,
                self.llr_max,
            )
            posterior = llr[active] + (self._vars @ c2v.T).T
            v2c[active] = np.clip(
                posterior[:, self._edge_var] - c2v, -self.llr_max, self.llr_max
            )

            hard[active] = posterior < 0
            iterations[active] = it
            done = np.all(self._syndrome(hard[active]) == target[active], axis=1)
            active = active[~done]

        words = hard[:, self.m :] if self.lengthened else hard
        converged = np.all(self._syndrome_of(words) == s, axis=1)
        log.debug(
            "bp on %r: %d/%d converged, mean %.1f iterations",
            self.H,
            int(converged.sum()),
            converged.size,
            float(iterations.mean()) if iterations.size else 0.0,
        )
        return words, converged, iterations

    def _syndrome_of(self, words: np.ndarray) -> np.ndarray:
        return (self.H.csr @ words.T.astype(np.int64)).T & 1


def bp_coset_decode(
    H: SparseBinaryIntMatrix,
    s,
    llr,
    max_iter: int = BP_MAX_ITER,
    llr_max: float = LLR_MAX,
    lengthened: bool = False,
) -> BpResult:
    """Sum-product decoding of the coset {c : H c = s (mod 2)}.

    Returns:
        BpResult: hard decision on the n code positions, whether it satisfies
        H c = s (mod 2), and the number of iterations run
    """
    decoder = BeliefPropagationDecoder(H, max_iter, llr_max, lengthened)
    return decoder.decode(llr, s)

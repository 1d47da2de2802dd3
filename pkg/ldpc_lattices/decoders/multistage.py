"""Multistage decoding of the lattice code.

Levels are decoded in order. Level l sees r_l = (r - sum_{i<l} 2^i c_i) / 2^l
(mod 2), a mod-2 channel with noise deviation sigma / 2^l, and decodes the coset
of C_l whose syndrome follows from the levels below it.

In genie mode the true lower levels replace the decisions, which measures each
level without error propagation.
"""
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from ..encoders.base import CosetEncoder
from ..lattice import LatticeCodeword, LatticeSpec, compose, syndrome
from ..utils.consts import BP_MAX_ITER, LLR_MAX
from ..utils.log import child_logger
from .bp import BeliefPropagationDecoder
from .channel import channel_llr, level_observation

log = child_logger(__name__)

MODES = ("full", "genie")


class LevelDecisions(NamedTuple):
    """Decisions of a batch, indexed [level][word]."""

    levels: List[np.ndarray]
    syndromes: List[np.ndarray]
    converged: np.ndarray
    iterations: np.ndarray


def decode_uncoded_level(y_residual, L: int) -> np.ndarray:
    """Nearest point of 2^L Z^n, ties to the even multiple of 2^L."""
    q = 2**L
    y = np.asarray(y_residual, dtype=np.float64)
    return (q * np.round(y / q)).astype(np.int64)


class MultistageDecoder:
    """Level-by-level BP decoder of one lattice.

    Attributes:
        spec {LatticeSpec} -- the lattice
        decoders {list} -- one BeliefPropagationDecoder per level
        encoders {list | None} -- per-level coset encoders, needed for the
            re-encoding variant and message recovery
    """

    def __init__(
        self,
        spec: LatticeSpec,
        encoders: Optional[Sequence[CosetEncoder]] = None,
        max_iter: int = BP_MAX_ITER,
        llr_max: float = LLR_MAX,
        lengthened: bool = False,
    ):
        self.spec = spec
        self.encoders = list(encoders) if encoders is not None else None
        self.llr_max = llr_max
        self.decoders = [
            BeliefPropagationDecoder(spec.binary(level), max_iter, llr_max, lengthened)
            for level in range(spec.L)
        ]

    def _syndromes(self, level: int, priors: List[np.ndarray], batch: int):
        if level == 0:
            return np.zeros((batch, self.spec.m[0]), dtype=np.uint8)
        return syndrome(self.spec, level, priors, strict=False)

    def _shift(self, level: int, s: np.ndarray) -> np.ndarray:
        """v_l: the coset representative encode(0, s_l) of every word."""
        if self.encoders is None:
            raise ValueError("re-encoding needs the per-level encoders")
        encoder = self.encoders[level]
        zero = np.zeros(encoder.k, dtype=np.uint8)
        return np.stack([encoder.encode(zero, row) for row in s])

    def decode_batch(
        self,
        r: np.ndarray,
        sigma: float,
        mode: str = "full",
        truth: Optional[Sequence[np.ndarray]] = None,
        reencode: bool = False,
    ) -> LevelDecisions:
        """Decode a batch of received words.

        Args:
            r (np.ndarray): channel outputs mod 2^L, shape (batch, n)
            sigma (float): noise deviation of the channel
            mode (str, optional): "full" or "genie". Defaults to "full".
            truth (Sequence[np.ndarray], optional): transmitted levels, each
                (batch, n); required in genie mode
            reencode (bool, optional): decode the linear code C_l on r_l shifted
                by the coset representative instead of the coset itself

        Returns:
            LevelDecisions: per-level decisions, syndromes, flags and iterations
        """
        if mode not in MODES:
            raise ValueError(f"unknown decoding mode `{mode}`")
        if mode == "genie" and truth is None:
            raise ValueError("genie decoding needs the transmitted levels")

        r = np.atleast_2d(np.asarray(r, dtype=np.float64))
        batch = r.shape[0]

        decided: List[np.ndarray] = []
        syndromes: List[np.ndarray] = []
        converged = np.zeros((self.spec.L, batch), dtype=bool)
        iterations = np.zeros((self.spec.L, batch), dtype=np.int64)

        for level in range(self.spec.L):
            priors = decided if mode == "full" else list(truth[:level])
            s = self._syndromes(level, priors, batch)
            r_level = level_observation(r, priors, level)
            sigma_level = sigma / 2**level

            decoder = self.decoders[level]
            if reencode:
                v = self._shift(level, s)
                llr = channel_llr(np.mod(r_level - v, 2.0), sigma_level, self.llr_max)
                words, ok, its = decoder.decode_batch(llr, np.zeros_like(s))
                words = words ^ v
            else:
                llr = channel_llr(r_level, sigma_level, self.llr_max)
                words, ok, its = decoder.decode_batch(llr, s)

            decided.append(words.astype(np.uint8))
            syndromes.append(s)
            converged[level] = ok
            iterations[level] = its

        return LevelDecisions(decided, syndromes, converged, iterations)

    def decode(self, r, sigma: float, reencode: bool = False):
        """Decode one received word.

        Returns:
            Tuple[LatticeCodeword, List[bool]]: the estimate and per-level
            convergence flags
        """
        out = self.decode_batch(np.asarray(r)[None, :], sigma, reencode=reencode)
        estimate = LatticeCodeword(
            tuple(words[0] for words in out.levels),
            tuple(s[0] for s in out.syndromes),
        )
        return estimate, [bool(flag) for flag in out.converged[:, 0]]

    def messages(self, estimate: LatticeCodeword) -> List[np.ndarray]:
        """u_0..u_{L-1} read off the systematic positions of every level."""
        if self.encoders is None:
            raise ValueError("message recovery needs the per-level encoders")
        return [
            enc.extract_message(c) for enc, c in zip(self.encoders, estimate.levels)
        ]

    def decode_point(self, y, sigma: float) -> Tuple[np.ndarray, List[bool]]:
        """Lattice point estimate from an unreduced channel output y = x + z.

        The coded levels are decoded from y mod 2^L; the residual is decoded on
        the uncoded sublattice 2^L Z^n.
        """
        y = np.asarray(y, dtype=np.float64)
        estimate, flags = self.decode(np.mod(y, self.spec.q), sigma)
        c = estimate.composed
        return c + decode_uncoded_level(y - c, self.spec.L), flags


def multistage_decode(
    spec: LatticeSpec,
    encoders: Optional[Sequence[CosetEncoder]],
    r,
    sigma: float,
    **kwargs,
) -> Tuple[LatticeCodeword, List[bool]]:
    """Decode r in [0, 2^L)^n level by level with coset BP."""
    return MultistageDecoder(spec, encoders, **kwargs).decode(r, sigma)


def reencode_shift_decode(
    spec: LatticeSpec,
    encoders: Sequence[CosetEncoder],
    r,
    sigma: float,
    **kwargs,
) -> LatticeCodeword:
    """Multistage decoding where each level decodes its linear code.

    Level l subtracts v_l = encode(0, s_l) from r_l, decodes C_l and adds v_l
    back to the decision.
    """
    decoder = MultistageDecoder(spec, encoders, **kwargs)
    return decoder.decode(r, sigma, reencode=True)[0]


def composed_estimates(decisions: LevelDecisions) -> np.ndarray:
    """Composed integer words of a decoded batch, shape (batch, n)."""
    return compose(decisions.levels)

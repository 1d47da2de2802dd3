"""Log-likelihood ratios of the mod-2 channel seen by one level.

At level l the receiver sees r = c + z / 2^l (mod 2), so the density of r
given a bit b is a Gaussian wrapped onto [0, 2):

    p(r | b) = sum over k of N(r - b - 2k; 0, sigma_l^2)
"""
import math

import numpy as np
from scipy.special import logsumexp

from ..utils.consts import LLR_MAX

# aliases farther than this many deviations from r are dropped
ALIAS_SPAN = 8.0


def alias_offsets(sigma: float) -> np.ndarray:
    """Shifts 2k covering every alias mean within ALIAS_SPAN sigma of [0, 2)."""
    K = max(1, int(math.ceil(ALIAS_SPAN * sigma / 2.0)) + 1)
    return 2.0 * np.arange(-K, K + 1, dtype=np.float64)


def channel_llr(r, sigma: float, llr_max: float = LLR_MAX) -> np.ndarray:
    """LLR_j = ln p(r_j | 0) - ln p(r_j | 1), clamped to +-llr_max.

    Args:
        r (array_like): received values, reduced mod 2
        sigma (float): effective noise deviation of the level
        llr_max (float, optional): saturation. Defaults to LLR_MAX.

    Returns:
        np.ndarray: float64 LLRs, same shape as r
    """
    if sigma <= 0:
        raise ValueError("sigma must be positive")

    r = np.asarray(r, dtype=np.float64)
    shifts = alias_offsets(sigma)
    scale = -0.5 / sigma**2

    d0 = r[..., None] - shifts
    d1 = d0 - 1.0
    llr = logsumexp(scale * d0**2, axis=-1) - logsumexp(scale * d1**2, axis=-1)
    return np.clip(llr, -llr_max, llr_max)


def level_observation(r, decided, level: int) -> np.ndarray:
    """r_l = (r - sum_{i<l} 2^i c_i) / 2^l mod 2."""
    r = np.asarray(r, dtype=np.float64)
    offset = np.zeros(r.shape, dtype=np.float64)
    for i, bits in enumerate(decided[:level]):
        offset += np.ldexp(np.asarray(bits, dtype=np.float64), i)
    return np.mod((r - offset) / 2.0**level, 2.0)

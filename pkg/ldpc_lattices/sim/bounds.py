"""Closed-form error probabilities of the unconstrained AWGN channel."""
import math
from typing import Sequence, Tuple

import numpy as np
from scipy.special import erfc
from scipy.stats import beta, norm


def q_function(x):
    """Q(x): upper tail of the standard normal."""
    return 0.5 * erfc(np.asarray(x, dtype=np.float64) / math.sqrt(2.0))


def pe_uncoded(q: int, n: int, sigma: float) -> float:
    """Error probability of the scaled integer lattice q Z^n.

    1 - (1 - 2 Q(q / 2 sigma))^n, evaluated through log1p/expm1 so that tiny
    symbol error probabilities are not lost to rounding.
    """
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    p = 2.0 * float(q_function(q / (2.0 * sigma)))
    if p >= 1.0:
        return 1.0
    return float(-math.expm1(n * math.log1p(-p)))


def sigma_for_uncoded_pe(q: int, n: int, pe: float) -> float:
    """Noise deviation at which q Z^n has error probability `pe`."""
    if not 0.0 < pe < 1.0:
        raise ValueError("pe must lie in (0, 1)")
    symbol = -math.expm1(math.log1p(-pe) / n)
    return q / (2.0 * float(norm.isf(symbol / 2.0)))


def union_bound(level_wers: Sequence[float], pe_uncoded: float) -> float:
    """P_e(lattice) <= sum of the coded level WERs and the uncoded term."""
    return min(1.0, float(sum(level_wers)) + pe_uncoded)


def clopper_pearson(
    errors: int, trials: int, confidence: float = 0.95
) -> Tuple[float, float]:
    """Exact binomial confidence interval for an error rate.

    Returns:
        Tuple[float, float]: lower and upper bound; (0, 1) without trials
    """
    if trials <= 0:
        return 0.0, 1.0
    alpha = 1.0 - confidence
    lower = (
        0.0
        if errors == 0
        else float(beta.ppf(alpha / 2, errors, trials - errors + 1))
    )
    upper = (
        1.0
        if errors >= trials
        else float(beta.ppf(1 - alpha / 2, errors + 1, trials - errors))
    )
    return lower, upper

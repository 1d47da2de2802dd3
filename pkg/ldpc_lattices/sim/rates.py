"""Rate design of two-level lattices.

f(R, sigma) is the WER of a code of rate R from a code family on the mod-2
channel with noise deviation sigma. It is simulated on a small grid and
interpolated by fitting log10 f as an affine function of (R, sigma in dB).

The optimized rule maximizes R_0 + R_1 + log2(sigma), which minimizes the VNR,
subject to

    f(R_0, sigma) + f(R_1, sigma / 2) + P_e(4 Z^n, sigma) <= P_e

The equal rule gives each of the three terms a third of the budget.
"""
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import DesignInfeasibleError
from ..lattice import volume_to_noise
from ..utils.log import child_logger
from .bounds import pe_uncoded, sigma_for_uncoded_pe
from .simulator import estimate_code_wer

log = child_logger(__name__)

RULES = ("optimized", "equal")

# resolution of the search over rates and noise levels
SEARCH_POINTS = 201


def _db(sigma):
    return 20.0 * np.log10(sigma)


@dataclass
class WerModel:
    """log10 f(R, sigma) ~ a + b R + c sigma_dB, fitted on simulated samples."""

    coef: np.ndarray
    samples: List[Tuple[float, float, float]] = field(default_factory=list)

    @classmethod
    def fit(cls, samples: Sequence[Tuple[float, float, float]]) -> "WerModel":
        """Least-squares fit on (R, sigma, wer) samples."""
        data = np.asarray(samples, dtype=np.float64)
        X = np.column_stack([np.ones(len(data)), data[:, 0], _db(data[:, 1])])
        y = np.log10(data[:, 2])
        coef, *_ = np.linalg.lstsq(X, y, rcond=None)
        return cls(coef, list(samples))

    def __call__(self, R, sigma):
        a, b, c = self.coef
        return 10.0 ** (a + b * np.asarray(R) + c * _db(np.asarray(sigma)))

    def max_rate(self, sigma: float, budget: float) -> float:
        """Largest R with f(R, sigma) <= budget, unclipped."""
        a, b, c = self.coef
        if b <= 0:
            return math.inf
        return (math.log10(budget) - a - c * _db(sigma)) / b


@dataclass
class RateDesign:
    """Rates, noise level and predicted error probability of a design."""

    rates: Tuple[float, float]
    sigma: float
    vnr_db: float
    predicted_pe: float
    rule: str
    models: Tuple[WerModel, WerModel]

    def m(self, n: int) -> Tuple[int, int]:
        """Check counts m_l = round(n (1 - R_l))."""
        return tuple(int(round(n * (1 - r))) for r in self.rates)


class _Oracle:
    """Simulated f(R, sigma) with the codes of the family built once per rate."""

    def __init__(self, family: Callable, wer: Callable):
        self.family = family
        self.wer = wer
        self.codes: Dict[float, object] = {}

    def __call__(self, R: float, sigma: float) -> float:
        R = round(float(R), 6)
        if R not in self.codes:
            self.codes[R] = self.family(R)
        return float(self.wer(self.codes[R], sigma))

    def grid(self, rates, sigmas, trials_floor: float) -> WerModel:
        samples = []
        for R in rates:
            for sigma in sigmas:
                value = max(self(R, sigma), trials_floor)
                samples.append((float(R), float(sigma), value))
        model = WerModel.fit(samples)
        log.debug("fitted %s on %d samples", np.round(model.coef, 4), len(samples))
        return model


def simulated_wer(trials: int = 2000, min_errors: int = 50, seed: int = 1):
    """f oracle estimating a code's WER by simulation."""

    def wer(H, sigma: float) -> float:
        point = estimate_code_wer(
            H, sigma, seed=seed, max_trials=trials, min_errors=min_errors
        )
        return (point.coded_errors + 0.5) / (point.trials + 1)

    return wer


def _solve(
    rule: str,
    models: Tuple[WerModel, WerModel],
    target_pe: float,
    n: int,
    ranges: Tuple[Tuple[float, float], Tuple[float, float]],
    sigma_range: Tuple[float, float],
):
    q = 4
    if rule == "equal":
        share = target_pe / 3
        if share >= 1.0:
            sigma = sigma_range[1]
        else:
            sigma = min(sigma_for_uncoded_pe(q, n, share), sigma_range[1])
        rates = []
        for level, model in enumerate(models):
            R = model.max_rate(sigma / 2**level, share)
            low, high = ranges[level]
            if R < low:
                return None
            rates.append(min(R, high))
        return tuple(rates), sigma

    sigmas = np.linspace(*sigma_range, SEARCH_POINTS)
    R0 = np.linspace(*ranges[0], SEARCH_POINTS)
    R1 = np.linspace(*ranges[1], SEARCH_POINTS)

    best = None
    for sigma in sigmas:
        budget = target_pe - pe_uncoded(q, n, sigma)
        if budget <= 0:
            continue
        f0 = models[0](R0, sigma)
        f1 = models[1](R1, sigma / 2)
        feasible = f0[:, None] + f1[None, :] <= budget
        if not feasible.any():
            continue
        total = np.where(feasible, R0[:, None] + R1[None, :], -np.inf)
        i, j = np.unravel_index(np.argmax(total), total.shape)
        score = total[i, j] + math.log2(sigma)
        if best is None or score > best[0]:
            best = (score, (float(R0[i]), float(R1[j])), float(sigma))

    if best is None:
        return None
    return best[1], best[2]


def design_rates(
    family: Callable,
    target_pe: float,
    n: int,
    L: int = 2,
    rule: str = "optimized",
    r0_range: Tuple[float, float] = (0.3, 0.7),
    r1_range: Tuple[float, float] = (0.9, 0.99),
    sigma_range: Optional[Tuple[float, float]] = None,
    grid: int = 5,
    wer: Optional[Callable] = None,
    refine: bool = True,
) -> RateDesign:
    """Choose the level rates and design noise level of a two-level lattice.

    Args:
        family (Callable): rate -> code, passed on to `wer`
        target_pe (float): word error probability budget of the lattice
        n (int): dimension
        L (int, optional): number of coded levels plus one; only 2 is supported
        rule (str, optional): "optimized" or "equal". Defaults to "optimized".
        r0_range, r1_range (Tuple[float, float], optional): searched rates
        sigma_range (Tuple[float, float], optional): searched noise levels;
            defaults to half and all of the deviation at which the uncoded level
            alone spends the budget
        grid (int, optional): simulated points per axis. Defaults to 5.
        wer (Callable, optional): (code, sigma) -> WER; simulated by default

    Returns:
        RateDesign: the chosen design

    Raises:
        DesignInfeasibleError: no point of the searched region meets the budget
    """
    if L != 2:
        raise ValueError("rate design is implemented for two-level lattices")
    if rule not in RULES:
        raise ValueError(f"unknown design rule `{rule}`")
    if not target_pe > 0:
        raise ValueError("target error probability must be positive")

    if sigma_range is None:
        top = sigma_for_uncoded_pe(4, n, min(target_pe, 0.5))
        sigma_range = (0.5 * top, top)

    oracle = _Oracle(family, wer or simulated_wer())
    floor = 1e-12
    ranges = (tuple(r0_range), tuple(r1_range))

    def fit(r0, r1, sigmas):
        return (
            oracle.grid(np.linspace(*r0, grid), np.linspace(*sigmas, grid), floor),
            oracle.grid(
                np.linspace(*r1, grid), np.linspace(*sigmas, grid) / 2, floor
            ),
        )

    models = fit(ranges[0], ranges[1], sigma_range)
    solution = _solve(rule, models, target_pe, n, ranges, sigma_range)
    if solution is None:
        raise DesignInfeasibleError(
            f"no rates in {ranges} meet P_e <= {target_pe} at n={n}"
        )

    if refine:
        (R0, R1), sigma = solution

        def around(x, span, bounds):
            half = (span[1] - span[0]) / 4
            return (max(bounds[0], x - half), min(bounds[1], x + half))

        local = (
            around(R0, ranges[0], ranges[0]),
            around(R1, ranges[1], ranges[1]),
        )
        local_sigma = around(sigma, sigma_range, sigma_range)
        refined = fit(local[0], local[1], local_sigma)
        again = _solve(rule, refined, target_pe, n, ranges, sigma_range)
        if again is not None:
            models, solution = refined, again

    (R0, R1), sigma = solution
    predicted = float(
        models[0](R0, sigma) + models[1](R1, sigma / 2) + pe_uncoded(4, n, sigma)
    )
    design = RateDesign(
        rates=(R0, R1),
        sigma=sigma,
        vnr_db=10 * math.log10(volume_to_noise(L, R0 + R1, sigma)),
        predicted_pe=predicted,
        rule=rule,
        models=models,
    )
    log.info(
        "%s design: R_0=%.4f R_1=%.4f sigma=%.4f vnr=%.3f dB predicted P_e=%.3e",
        rule,
        R0,
        R1,
        sigma,
        design.vnr_db,
        predicted,
    )
    return design

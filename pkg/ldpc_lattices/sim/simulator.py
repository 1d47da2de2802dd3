"""Monte-Carlo word error rates on the unconstrained AWGN channel.

One trial draws uniform messages for every level, encodes them sequentially,
adds Gaussian noise, reduces mod 2^L and decodes level by level. Trial `t` takes
all of its randomness from the counter stream ("trial", t) of the master seed,
so a point is reproducible and independent of batching and worker count.
"""
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from ..decoders.bp import BeliefPropagationDecoder
from ..decoders.channel import channel_llr
from ..decoders.multistage import MODES, MultistageDecoder, decode_uncoded_level
from ..encoders.base import CosetEncoder
from ..encoders.utils import build_encoders
from ..lattice import (
    LatticeSpec,
    compose,
    sequential_encode,
    sigma_for_vnr,
    vnr,
    volume_to_noise,
)
from ..utils.consts import (
    BATCH_SIZE,
    BP_MAX_ITER,
    DEEP_WER,
    LLR_MAX,
    MAX_TRIALS,
    MIN_WORD_ERRORS,
    MIN_WORD_ERRORS_DEEP,
)
from ..utils.log import child_logger
from ..utils.seeds import counter_rng
from .bounds import clopper_pearson, pe_uncoded

log = child_logger(__name__)

UNITS = ("vnr_db", "sigma")
UNCODED = ("analytic", "simulated")
DECODERS = ("coset", "lengthened", "reencode")


@dataclass
class SimConfig:
    """Operating points, stop rule and decoder choice of a simulation.

    Attributes:
        spec {LatticeSpec} -- the lattice
        points {list} -- operating points in `unit`
        unit {str} -- "vnr_db" or "sigma"
        max_trials {int} -- trial budget per point
        min_errors {int} -- word errors needed to stop
        min_errors_deep {int} -- word errors needed once the WER is below DEEP_WER
        seed {int} -- master seed
        mode {str} -- "full" multistage or "genie" per-level decoding
        uncoded {str} -- "analytic" or "simulated" uncoded level
        decoder {str} -- "coset", "lengthened" or "reencode"
    """

    spec: LatticeSpec
    points: List[float] = field(default_factory=list)
    unit: str = "vnr_db"
    max_trials: int = MAX_TRIALS
    min_errors: int = MIN_WORD_ERRORS
    min_errors_deep: int = MIN_WORD_ERRORS_DEEP
    seed: int = 1
    mode: str = "full"
    uncoded: str = "analytic"
    decoder: str = "coset"
    encoder: str = "alt"
    gap_hint: Optional[int] = None
    batch_size: int = BATCH_SIZE
    max_iter: int = BP_MAX_ITER
    llr_max: float = LLR_MAX
    threads: int = 1
    progress: bool = False

    def __post_init__(self):
        if self.min_errors < 1 or self.min_errors_deep < 1:
            raise ValueError("the stop rule needs at least one word error")
        if self.unit not in UNITS:
            raise ValueError(f"unknown unit `{self.unit}`")
        if self.mode not in MODES:
            raise ValueError(f"unknown mode `{self.mode}`")
        if self.uncoded not in UNCODED:
            raise ValueError(f"unknown uncoded handling `{self.uncoded}`")
        if self.decoder not in DECODERS:
            raise ValueError(f"unknown decoder `{self.decoder}`")
        if self.unit == "sigma" and any(p <= 0 for p in self.points):
            raise ValueError("noise deviations must be positive")
        if self.batch_size < 1 or self.max_trials < 1:
            raise ValueError("batch size and trial budget must be positive")

    def sigma(self, point: float) -> float:
        if self.unit == "sigma":
            return float(point)
        return sigma_for_vnr(self.spec.L, self.spec.R, point)

    def sigmas(self, points: Optional[Sequence[float]] = None) -> List[float]:
        return [self.sigma(p) for p in (self.points if points is None else points)]


@dataclass
class WerPoint:
    """Counts and rates of one simulated operating point."""

    sigma: float
    vnr_db: float
    trials: int
    level_errors: List[int]
    coded_errors: int
    pe_uncoded: float
    total_errors: Optional[int] = None
    wall_time: float = 0.0
    low_confidence: bool = False

    @property
    def level_wers(self) -> List[float]:
        return [e / self.trials if self.trials else 0.0 for e in self.level_errors]

    @property
    def wer_coded(self) -> float:
        return self.coded_errors / self.trials if self.trials else 0.0

    @property
    def wer_total(self) -> float:
        """Coded WER plus the uncoded term; measured in simulated mode."""
        if self.total_errors is not None:
            return self.total_errors / self.trials if self.trials else 0.0
        return self.wer_coded + self.pe_uncoded

    def interval(self, confidence: float = 0.95) -> Tuple[float, float]:
        """Clopper-Pearson interval of the coded WER."""
        return clopper_pearson(self.coded_errors, self.trials, confidence)

    def level_intervals(self, confidence: float = 0.95) -> List[Tuple[float, float]]:
        """Clopper-Pearson interval of every per-level WER."""
        return [clopper_pearson(e, self.trials, confidence) for e in self.level_errors]

    def total_interval(self, confidence: float = 0.95) -> Tuple[float, float]:
        """Interval of `wer_total`.

        Simulated mode counts total errors directly. Otherwise the analytic
        uncoded term is exact and shifts the coded interval.
        """
        if self.total_errors is not None:
            return clopper_pearson(self.total_errors, self.trials, confidence)
        lower, upper = self.interval(confidence)
        return lower + self.pe_uncoded, min(upper + self.pe_uncoded, 1.0)


class BatchCounts(NamedTuple):
    trials: int
    level_errors: np.ndarray
    coded_errors: int
    total_errors: int


class Simulator:
    """Trial runner of one configuration.

    Arguments:
        cfg {SimConfig} -- the configuration

    Keyword Arguments:
        encoders {list} -- prebuilt per-level encoders (default: {None})
    """

    def __init__(
        self, cfg: SimConfig, encoders: Optional[Sequence[CosetEncoder]] = None
    ):
        self.cfg = cfg
        spec = cfg.spec
        if encoders is None:
            encoders = build_encoders(
                [spec.binary(level) for level in range(spec.L)],
                cfg.encoder,
                gap_hint=cfg.gap_hint,
            )
        self.encoders = list(encoders)
        self.decoder = MultistageDecoder(
            spec,
            self.encoders,
            cfg.max_iter,
            cfg.llr_max,
            lengthened=cfg.decoder == "lengthened",
        )

    def draw(self, trial: int, sigma: float):
        """Messages and noise of trial `trial`."""
        spec = self.cfg.spec
        rng = counter_rng(self.cfg.seed, "trial", trial)
        messages = [rng.integers(0, 2, size=k, dtype=np.uint8) for k in spec.k]
        noise = sigma * rng.standard_normal(spec.n)
        return messages, noise

    def run_batch(self, sigma: float, start: int, count: int) -> BatchCounts:
        """Simulate trials start..start+count-1."""
        spec = self.cfg.spec
        levels = [np.zeros((count, spec.n), dtype=np.uint8) for _ in range(spec.L)]
        noise = np.zeros((count, spec.n), dtype=np.float64)

        for b in range(count):
            messages, noise[b] = self.draw(start + b, sigma)
            word = sequential_encode(spec, self.encoders, messages)
            for level in range(spec.L):
                levels[level][b] = word.levels[level]

        x = compose(levels)
        y = x + noise
        decisions = self.decoder.decode_batch(
            np.mod(y, spec.q),
            sigma,
            mode=self.cfg.mode,
            truth=levels,
            reencode=self.cfg.decoder == "reencode",
        )

        wrong = np.stack(
            [np.any(d != t, axis=1) for d, t in zip(decisions.levels, levels)]
        )
        coded = np.any(wrong, axis=0)

        total = coded
        if self.cfg.uncoded == "simulated":
            c = compose(decisions.levels)
            point = c + decode_uncoded_level(y - c, spec.L)
            total = np.any(point != x, axis=1)

        return BatchCounts(
            count, wrong.sum(axis=1), int(coded.sum()), int(total.sum())
        )

    def _required(self, errors: int, trials: int) -> int:
        if trials and errors / trials < DEEP_WER:
            return self.cfg.min_errors_deep
        return self.cfg.min_errors

    def _batches(self, sigma: float, pool: Optional[ProcessPoolExecutor]):
        """Batch results in trial order, computed ahead on `pool` if given."""
        size = self.cfg.batch_size
        starts = range(0, self.cfg.max_trials, size)
        spans = [(s, min(size, self.cfg.max_trials - s)) for s in starts]

        if pool is None:
            for start, count in spans:
                yield self.run_batch(sigma, start, count)
            return

        window = 2 * self.cfg.threads
        for head in range(0, len(spans), window):
            chunk = spans[head : head + window]
            futures = [
                pool.submit(_worker_batch, sigma, start, count)
                for start, count in chunk
            ]
            for future in futures:
                yield future.result()

    def simulate_point(
        self, sigma: float, pool: Optional[ProcessPoolExecutor] = None
    ) -> WerPoint:
        """Run trials at noise deviation `sigma` until the stop rule holds."""
        cfg = self.cfg
        spec = cfg.spec
        began = time.perf_counter()

        trials = 0
        level_errors = np.zeros(spec.L, dtype=np.int64)
        coded = 0
        total = 0

        with tqdm(
            total=cfg.max_trials,
            disable=not cfg.progress,
            unit="word",
            leave=False,
            desc=f"sigma={sigma:.4f}",
        ) as bar:
            for counts in self._batches(sigma, pool):
                trials += counts.trials
                level_errors += counts.level_errors
                coded += counts.coded_errors
                total += counts.total_errors
                bar.update(counts.trials)

                errors = total if cfg.uncoded == "simulated" else coded
                if errors >= self._required(errors, trials):
                    break

        errors = total if cfg.uncoded == "simulated" else coded
        point = WerPoint(
            sigma=sigma,
            vnr_db=vnr(spec, sigma)[1],
            trials=trials,
            level_errors=[int(e) for e in level_errors],
            coded_errors=coded,
            pe_uncoded=pe_uncoded(spec.q, spec.n, sigma),
            total_errors=total if cfg.uncoded == "simulated" else None,
            wall_time=time.perf_counter() - began,
            low_confidence=errors < self._required(errors, trials),
        )

        log.info(
            "sigma=%.4f vnr=%.3f dB trials=%d coded errors=%d wer_coded=%.3e "
            "wer_total=%.3e",
            point.sigma,
            point.vnr_db,
            point.trials,
            point.coded_errors,
            point.wer_coded,
            point.wer_total,
        )
        if point.low_confidence:
            log.warning(
                "trial budget %d exhausted at sigma=%.4f with %d errors",
                cfg.max_trials,
                sigma,
                errors,
            )
        return point

    def sweep(self, points: Optional[Sequence[float]] = None) -> List[WerPoint]:
        """One WerPoint per operating point, in the given order."""
        sigmas = self.cfg.sigmas(points)
        if not sigmas:
            return []

        if self.cfg.threads > 1:
            with ProcessPoolExecutor(
                max_workers=self.cfg.threads,
                initializer=_init_worker,
                initargs=(self.cfg,),
            ) as pool:
                result = [self.simulate_point(s, pool) for s in sigmas]
        else:
            result = [self.simulate_point(s) for s in sigmas]

        check_monotone(result)
        return result


def check_monotone(points: Sequence[WerPoint]) -> bool:
    """Warn when the coded WER rises significantly with the VNR."""
    ordered = sorted(points, key=lambda p: p.vnr_db)
    monotone = True
    for low, high in zip(ordered, ordered[1:]):
        if high.interval()[0] > low.interval()[1]:
            monotone = False
            log.warning(
                "wer_coded rises from %.3e at %.3f dB to %.3e at %.3f dB",
                low.wer_coded,
                low.vnr_db,
                high.wer_coded,
                high.vnr_db,
            )
    return monotone


_WORKER: Optional[Simulator] = None


def _init_worker(cfg: SimConfig):
    global _WORKER
    _WORKER = Simulator(cfg)


def _worker_batch(sigma: float, start: int, count: int) -> BatchCounts:
    assert _WORKER is not None
    return _WORKER.run_batch(sigma, start, count)


def simulate_point(cfg: SimConfig, sigma: float) -> WerPoint:
    return Simulator(cfg).simulate_point(sigma)


def sweep(cfg: SimConfig, points: Optional[Sequence[float]] = None) -> List[WerPoint]:
    return Simulator(cfg).sweep(points)


def estimate_code_wer(
    H,
    sigma: float,
    seed: int = 1,
    max_trials: int = MAX_TRIALS,
    min_errors: int = MIN_WORD_ERRORS,
    batch_size: int = BATCH_SIZE,
    max_iter: int = BP_MAX_ITER,
) -> WerPoint:
    """WER of one binary code on the mod-2 channel with noise deviation sigma.

    The channel is symmetric, so the all-zero word is sent. The returned point
    has one level and no uncoded term.
    """
    decoder = BeliefPropagationDecoder(H, max_iter)
    n = decoder.n
    began = time.perf_counter()
    trials = 0
    errors = 0

    while trials < max_trials and errors < min_errors:
        count = min(batch_size, max_trials - trials)
        noise = np.stack(
            [
                counter_rng(seed, "code", trials + b).standard_normal(n)
                for b in range(count)
            ]
        )
        llr = channel_llr(np.mod(sigma * noise, 2.0), sigma)
        words, _, _ = decoder.decode_batch(llr, np.zeros((count, decoder.m)))
        errors += int(np.any(words, axis=1).sum())
        trials += count

    rate = (n - decoder.m) / n
    log.debug("code %r at sigma=%.4f: %d/%d errors", decoder.H, sigma, errors, trials)
    return WerPoint(
        sigma=sigma,
        vnr_db=10 * math.log10(volume_to_noise(1, rate, sigma)),
        trials=trials,
        level_errors=[errors],
        coded_errors=errors,
        pe_uncoded=0.0,
        wall_time=time.perf_counter() - began,
        low_confidence=errors < min_errors,
    )

"""Nested parity-check families for multilevel lattices.

The highest-rate matrix H_{L-1} is grown by (triangular) PEG and every lower
level is obtained by check splitting the one above it, so that
H_{l+1} = F_{l+1} H_l over the integers. The binary family is then lifted to a
generalized Construction D' lattice.
"""
import json
import math
import os
from dataclasses import asdict, dataclass
from typing import List, NamedTuple, Optional, Sequence

from ..encoders.alt import alt_gap
from ..lattice import LatticeSpec, lift_spec
from ..matrix.linalg import gf2_rank
from ..matrix.sparse import SparseBinaryIntMatrix
from ..matrix.tanner import girth
from ..utils.consts import RANK_RETRIES
from ..utils.log import child_logger
from ..utils.seeds import derive_seed
from .peg import build_peg
from .splitting import (
    SplitResult,
    check_split,
    peg_check_split,
    triangular_peg_check_split,
)

log = child_logger(__name__)

METHODS = ("peg", "plain")


@dataclass
class DesignRecord:
    """Construction summary of one matrix of the family."""

    level: int
    n: int
    m: int
    dv: int
    gap: int
    girth: Optional[int]
    rank: int
    seed: int
    attempts: int
    method: str

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


class Family(NamedTuple):
    spec: LatticeSpec
    records: List[DesignRecord]


def _record(
    level: int, H: SparseBinaryIntMatrix, dv: int, seed: int, attempts: int, method
) -> DesignRecord:
    g = girth(H)
    record = DesignRecord(
        level=level,
        n=H.cols,
        m=H.rows,
        dv=dv,
        gap=alt_gap(H),
        girth=None if math.isinf(g) else int(g),
        rank=gf2_rank(H),
        seed=seed,
        attempts=attempts,
        method=method,
    )
    log.info(
        "H_%d: %dx%d girth=%s rank=%d gap=%d after %d attempts",
        level,
        record.m,
        record.n,
        "inf" if record.girth is None else record.girth,
        record.rank,
        record.gap,
        attempts,
    )
    return record


def design_nested_family(
    n: int,
    m: Sequence[int],
    dv: int,
    seed: int,
    gap: Optional[int] = None,
    method: str = "peg",
    retries: int = RANK_RETRIES,
    max_depth: Optional[int] = None,
) -> Family:
    """Design H_0..H_{L-1} with m_0 >= ... >= m_{L-1} rows and lift them.

    Args:
        n (int): code length
        m (Sequence[int]): check counts m_0..m_{L-1}
        dv (int): column weight
        seed (int): master seed; each level derives its own
        gap (int, optional): ALT gap of every level; None builds unstructured
            matrices
        method (str, optional): "peg" or "plain" check splitting

    Returns:
        Family: the lattice spec with couplings and one record per level

    Raises:
        RankDeficiencyError: a level stayed rank deficient
        InfeasibleMappingError: a triangular split could not place a diagonal
    """
    if method not in METHODS:
        raise ValueError(f"unknown design method `{method}`")
    if any(a < b for a, b in zip(m, m[1:])):
        raise ValueError(f"check counts {list(m)} must be non-increasing")

    L = len(m)
    top_seed = derive_seed(seed, "design", L - 1)
    top, attempts = build_peg(
        n, m[-1], dv, top_seed, gap=gap, retries=retries, max_depth=max_depth
    )

    H: List[SparseBinaryIntMatrix] = [top]
    F: List[SparseBinaryIntMatrix] = []
    records = [_record(L - 1, top, dv, top_seed, attempts, "peg")]

    for level in range(L - 2, -1, -1):
        level_seed = derive_seed(seed, "design", level)
        B = H[0]
        result: SplitResult
        if method == "plain":
            result = check_split(B, m[level], level_seed, retries)
        elif gap is None:
            result = peg_check_split(B, m[level], level_seed, retries, max_depth)
        else:
            result = triangular_peg_check_split(
                B, gap, m[level], level_seed, retries, max_depth
            )

        H.insert(0, result.H)
        F.insert(0, result.F)
        records.insert(
            0, _record(level, result.H, dv, level_seed, result.attempts, method)
        )

    meta = {"n": n, "m": list(m), "dv": dv, "gap": gap, "seed": seed}
    meta["method"] = method
    return Family(lift_spec(H, F, meta), records)


def write_design_report(records: Sequence[DesignRecord], path: str):
    """One JSON object per line, level order."""
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        for record in records:
            f.write(record.to_json() + "\n")


def read_design_report(path: str) -> List[DesignRecord]:
    with open(path, "r", encoding="utf-8") as f:
        return [DesignRecord(**json.loads(line)) for line in f if line.strip()]


def peg_family(n: int, dv: int, seed: int, gap: Optional[int] = None):
    """rate -> PEG matrix of that rate, the code family of rate design."""

    def build(rate: float) -> SparseBinaryIntMatrix:
        m = max(1, int(round(n * (1 - rate))))
        g = None if gap is None else min(gap, m)
        return build_peg(n, m, dv, derive_seed(seed, "family", m), gap=g)[0]

    return build

"""Progressive edge growth.

Matrices are grown one edge at a time. Every new edge of variable node `j`
goes to the allowed check that is farthest from `j` in the current Tanner graph
(unreachable checks count as infinitely far), ties going to the check of lowest
current degree and then to the tie-break rule.

The triangular variant works in approximate *upper* triangular orientation:
column `c < m - g` gets its first edge at row `g + c` and the rest in rows
above it. The result is flipped up-down and left-right on exit, so callers
always see the stored ALT (lower) form.
"""
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..errors import RankDeficiencyError
from ..matrix.linalg import gf2_rank
from ..matrix.sparse import SparseBinaryIntMatrix
from ..matrix.tanner import TannerDistanceOracle
from ..utils.consts import RANK_RETRIES
from ..utils.log import child_logger
from ..utils.seeds import counter_rng

log = child_logger(__name__)


def choose_check(
    candidates: Sequence[int],
    distances: np.ndarray,
    degrees: Sequence[int],
    rng: Optional[np.random.Generator] = None,
) -> int:
    """Pick the farthest, then least loaded, candidate check.

    Args:
        candidates (Sequence[int]): allowed check indices, non-empty
        distances (np.ndarray): distance of every check to the current variable
        degrees (Sequence[int]): current degree of every check
        rng (np.random.Generator, optional): uniform choice among the remaining
            ties; the lowest index wins when omitted

    Returns:
        int: chosen check index
    """
    candidates = np.asarray(candidates, dtype=np.int64)
    dist = distances[candidates]
    candidates = candidates[dist == dist.max()]

    load = np.asarray(degrees)[candidates]
    candidates = candidates[load == load.min()]

    if rng is None or candidates.size == 1:
        return int(candidates.min())
    return int(rng.choice(candidates))


class TannerBuilder:
    """Mutable Tanner graph that PEG-style algorithms add edges to."""

    def __init__(self, m: int, n: int):
        self.m = m
        self.n = n
        self.check_adj: List[List[int]] = [[] for _ in range(m)]
        self.var_adj: List[List[int]] = [[] for _ in range(n)]
        self.degrees = np.zeros(m, dtype=np.int64)
        self.oracle = TannerDistanceOracle(self.check_adj, self.var_adj)

    def add_edge(self, i: int, j: int):
        self.check_adj[i].append(j)
        self.var_adj[j].append(i)
        self.degrees[i] += 1

    def distances(
        self, j: int, candidates: Sequence[int], max_depth: Optional[int] = None
    ) -> np.ndarray:
        if not self.var_adj[j]:
            return np.full(self.m, np.inf)
        return self.oracle.distances_from_variable(j, candidates, max_depth)

    def connect(
        self,
        j: int,
        candidates: Sequence[int],
        rng: Optional[np.random.Generator] = None,
        max_depth: Optional[int] = None,
    ) -> int:
        """Attach variable `j` to the best of `candidates` and return the check."""
        dist = self.distances(j, candidates, max_depth)
        i = choose_check(candidates, dist, self.degrees, rng)
        self.add_edge(i, j)
        return i

    def to_matrix(self) -> SparseBinaryIntMatrix:
        return SparseBinaryIntMatrix.from_supports(
            (self.m, self.n), [sorted(adj) for adj in self.check_adj]
        )


def _grow(
    n: int,
    m: int,
    dv: int,
    gap: Optional[int],
    rng: np.random.Generator,
    max_depth: Optional[int],
) -> SparseBinaryIntMatrix:
    graph = TannerBuilder(m, n)
    triangle = 0 if gap is None else m - gap

    for j in range(n):
        connected = set()
        if j < triangle:
            diagonal = gap + j
            graph.add_edge(diagonal, j)
            connected.add(diagonal)
            allowed = range(diagonal)
        else:
            allowed = range(m)

        while len(connected) < dv:
            candidates = [i for i in allowed if i not in connected]
            if not candidates:
                break
            connected.add(graph.connect(j, candidates, rng, max_depth))

    H = graph.to_matrix()
    return H if gap is None else H.flip()


def build_peg(
    n: int,
    m: int,
    dv: int,
    seed: int,
    gap: Optional[int] = None,
    retries: int = RANK_RETRIES,
    max_depth: Optional[int] = None,
) -> Tuple[SparseBinaryIntMatrix, int]:
    """Run PEG until the result is full rank mod 2.

    Returns:
        Tuple[SparseBinaryIntMatrix, int]: the matrix and the number of attempts

    Raises:
        ValueError: impossible parameters
        RankDeficiencyError: no full-rank matrix within `retries` attempts
    """
    if not 1 <= m <= n:
        raise ValueError(f"need 1 <= m <= n, got m={m}, n={n}")
    if not 1 <= dv <= m:
        raise ValueError(f"variable degree {dv} not placeable in {m} checks")
    if gap is not None and not 0 <= gap <= m:
        raise ValueError(f"gap {gap} outside [0, {m}]")

    rank = -1
    for attempt in range(retries):
        rng = counter_rng(seed, "peg", attempt)
        H = _grow(n, m, dv, gap, rng, max_depth)
        rank = gf2_rank(H)
        if rank == m:
            if attempt:
                log.info("peg %dx%d full rank after %d attempts", m, n, attempt + 1)
            return H, attempt + 1

        log.debug("peg %dx%d attempt %d has rank %d", m, n, attempt + 1, rank)

    raise RankDeficiencyError(
        f"peg {m}x{n} dv={dv} gap={gap} stayed rank deficient (rank {rank})",
        rank=rank,
        attempts=retries,
    )


def peg_construct(
    n: int, m: int, dv: int, seed: int, **kwargs
) -> SparseBinaryIntMatrix:
    """Regular-column PEG parity-check matrix of size m x n, full rank mod 2."""
    return build_peg(n, m, dv, seed, gap=None, **kwargs)[0]


def peg_construct_triangular(
    n: int, m: int, dv: int, g: int, seed: int, **kwargs
) -> SparseBinaryIntMatrix:
    """PEG matrix in ALT form with gap `g`.

    The first `dv - 1 - g` triangular columns may end up lighter than `dv`,
    since fewer rows lie above their diagonal entry.
    """
    return build_peg(n, m, dv, seed, gap=g, **kwargs)[0]

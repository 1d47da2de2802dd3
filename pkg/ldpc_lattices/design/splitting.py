"""Check splitting.

A base matrix B (b x n) is split into H (m x n) by partitioning the support of
every base row among its child rows, so that B = F H over the integers, where
F (b x m) is the binary coupling matrix of the parent mapping. Column weights
are preserved and girth cannot decrease.
"""
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from ..errors import InfeasibleMappingError, RankDeficiencyError
from ..matrix.linalg import gf2_rank
from ..matrix.sparse import SparseBinaryIntMatrix, int_matmul
from ..utils.consts import RANK_RETRIES
from ..utils.log import child_logger
from ..utils.seeds import counter_rng
from .peg import TannerBuilder

log = child_logger(__name__)


@dataclass(frozen=True)
class ParentMapping:
    """Surjection p from child rows {0..m-1} onto parent rows {0..b-1}.

    Attributes:
        parents {tuple} -- p(i) for every child row i
        b {int} -- number of parent rows
    """

    parents: Tuple[int, ...]
    b: int
    _preimages: Tuple[Tuple[int, ...], ...] = field(
        init=False, repr=False, compare=False
    )

    def __post_init__(self):
        if len(self.parents) < self.b:
            raise ValueError(f"{len(self.parents)} children for {self.b} parents")

        preimages: List[List[int]] = [[] for _ in range(self.b)]
        for i, k in enumerate(self.parents):
            if not 0 <= k < self.b:
                raise ValueError(f"parent {k} of child {i} out of range")
            preimages[k].append(i)

        orphans = [k for k, children in enumerate(preimages) if not children]
        if orphans:
            raise ValueError(f"parents {orphans} have no child")

        object.__setattr__(self, "_preimages", tuple(map(tuple, preimages)))

    @property
    def m(self) -> int:
        return len(self.parents)

    def __call__(self, i: int) -> int:
        return self.parents[i]

    def preimage(self, k: int) -> Tuple[int, ...]:
        """p^{-1}(k), increasing."""
        return self._preimages[k]

    def coupling(self) -> SparseBinaryIntMatrix:
        """F with F[k, i] = 1 iff p(i) = k."""
        return SparseBinaryIntMatrix.from_supports(
            (self.b, self.m), [list(children) for children in self._preimages]
        )

    def flip(self) -> "ParentMapping":
        """Mapping of the up-down flipped child and parent rows."""
        m, b = self.m, self.b
        return ParentMapping(
            tuple(b - 1 - self.parents[m - 1 - i] for i in range(m)), b
        )

    @classmethod
    def from_coupling(cls, F: SparseBinaryIntMatrix) -> "ParentMapping":
        """Recover p from a binary coupling matrix (one 1 per column)."""
        parents = []
        for i in range(F.cols):
            support = F.col_support(i)
            if support.size != 1:
                raise ValueError(f"child {i} has {support.size} parents")
            parents.append(int(support[0]))
        return cls(tuple(parents), F.rows)


@dataclass(frozen=True)
class SplitResult:
    """Outcome of a check split: H, its coupling F (B = F H) and the mapping."""

    H: SparseBinaryIntMatrix
    F: SparseBinaryIntMatrix
    mapping: ParentMapping
    attempts: int = 1


def _mu(weights: np.ndarray, counts: np.ndarray) -> np.ndarray:
    return weights / (counts + 1)


def create_parent_mapping(B: SparseBinaryIntMatrix, m: int) -> ParentMapping:
    """Parent mapping concentrating the expected child row weights.

    The first b children map to their own index; every further child joins the
    parent k maximising |J_k(B)| / (|p^{-1}(k)| + 1), lowest index on ties.
    """
    b = B.rows
    if m < b:
        raise ValueError(f"cannot split {b} rows into {m}")

    weights = B.row_weights().astype(np.float64)
    counts = np.ones(b, dtype=np.int64)
    parents = list(range(b))

    for _ in range(b, m):
        k = int(np.argmax(_mu(weights, counts)))
        parents.append(k)
        counts[k] += 1

    return ParentMapping(tuple(parents), b)


def create_parent_mapping_triangular(
    B: SparseBinaryIntMatrix, g: int, m: int
) -> ParentMapping:
    """Parent mapping for the triangular split, in upper orientation.

    Child `i >= b` may only take a parent that has a 1 in column `i - g`, so that
    the diagonal entry (i, i - g) of H has an edge of B to come from.

    Raises:
        InfeasibleMappingError: column `i - g` of B is empty
    """
    b = B.rows
    if m < b:
        raise ValueError(f"cannot split {b} rows into {m}")

    weights = B.row_weights().astype(np.float64)
    counts = np.ones(b, dtype=np.int64)
    parents = list(range(b))

    for i in range(b, m):
        if i - g >= 0:
            K = B.col_support(i - g)
            if K.size == 0:
                raise InfeasibleMappingError(
                    f"no parent row covers diagonal position ({i}, {i - g})"
                )
        else:
            K = np.arange(b)
        k = int(K[np.argmax(_mu(weights[K], counts[K]))])
        parents.append(k)
        counts[k] += 1

    return ParentMapping(tuple(parents), b)


def _result(
    builder: TannerBuilder, mapping: ParentMapping, attempts: int
) -> SplitResult:
    return SplitResult(builder.to_matrix(), mapping.coupling(), mapping, attempts)


def _split_plain(
    B: SparseBinaryIntMatrix, mapping: ParentMapping, rng: np.random.Generator
) -> TannerBuilder:
    graph = TannerBuilder(mapping.m, B.cols)
    for k in range(B.rows):
        support = rng.permutation(B.row_support(k))
        children = mapping.preimage(k)
        offset = int(rng.integers(len(children)))
        for t, j in enumerate(support.tolist()):
            graph.add_edge(children[(t + offset) % len(children)], j)
    return graph


def _split_peg(
    B: SparseBinaryIntMatrix,
    mapping: ParentMapping,
    rng: Optional[np.random.Generator],
    max_depth: Optional[int],
) -> TannerBuilder:
    graph = TannerBuilder(mapping.m, B.cols)
    for j in range(B.cols):
        for k in B.col_support(j).tolist():
            graph.connect(j, mapping.preimage(k), rng, max_depth)
    return graph


def _split_triangular(
    B: SparseBinaryIntMatrix,
    g: int,
    mapping: ParentMapping,
    rng: Optional[np.random.Generator],
    max_depth: Optional[int],
) -> TannerBuilder:
    m = mapping.m
    graph = TannerBuilder(m, B.cols)

    for j in range(B.cols):
        K = B.col_support(j).tolist()
        if j < m - g:
            diagonal = g + j
            k0 = mapping(diagonal)
            if k0 not in K:
                raise InfeasibleMappingError(
                    f"parent {k0} of row {diagonal} has no edge in column {j}"
                )
            graph.add_edge(diagonal, j)
            K.remove(k0)

        limit = min(g + j, m)
        for k in K:
            candidates = [i for i in mapping.preimage(k) if i < limit]
            if not candidates:
                raise InfeasibleMappingError(
                    f"no child of parent {k} lies above row {limit} in column {j}"
                )
            graph.connect(j, candidates, rng, max_depth)

    return graph


def _with_retries(B, m, retries, label, attempt_fn) -> SplitResult:
    rank = -1
    for attempt in range(retries):
        result = attempt_fn(attempt)
        rank = gf2_rank(result.H)
        if rank == m:
            if attempt:
                log.info(
                    "%s %d -> %d full rank after %d attempts",
                    label,
                    B.rows,
                    m,
                    attempt + 1,
                )
            return result
        log.debug(
            "%s %d -> %d attempt %d has rank %d", label, B.rows, m, attempt + 1, rank
        )

    raise RankDeficiencyError(
        f"{label} of {B.rows} rows into {m} stayed rank deficient (rank {rank})",
        rank=rank,
        attempts=retries,
    )


def _identity_split(B: SparseBinaryIntMatrix) -> SplitResult:
    mapping = ParentMapping(tuple(range(B.rows)), B.rows)
    return SplitResult(B.mod2(), mapping.coupling(), mapping, 1)


def check_split(
    B: SparseBinaryIntMatrix, m: int, seed: int, retries: int = RANK_RETRIES
) -> SplitResult:
    """Plain check splitting: each base row's support is shuffled and dealt to
    its children in turn."""
    if m == B.rows:
        return _identity_split(B)
    mapping = create_parent_mapping(B, m)

    def attempt(a: int) -> SplitResult:
        graph = _split_plain(B, mapping, counter_rng(seed, "split", a))
        return _result(graph, mapping, a + 1)

    return _with_retries(B, m, retries, "plain split", attempt)


def peg_check_split(
    B: SparseBinaryIntMatrix,
    m: int,
    seed: int,
    retries: int = RANK_RETRIES,
    max_depth: Optional[int] = None,
) -> SplitResult:
    """PEG-based check splitting.

    Each edge (k, j) of B, taken column by column, goes to the child of k
    farthest from variable j, then of lowest weight. The first attempt breaks
    remaining ties by lowest index, rank retries by seeded choice.

    Args:
        B (SparseBinaryIntMatrix): binary base matrix, full rank mod 2
        m (int): number of rows of the split matrix, at least B.rows
        seed (int): master seed of the retries

    Returns:
        SplitResult: H, F with B = F H, and the parent mapping

    Raises:
        RankDeficiencyError: H stayed rank deficient for every attempt
    """
    if m == B.rows:
        return _identity_split(B)
    mapping = create_parent_mapping(B, m)

    def attempt(a: int) -> SplitResult:
        rng = counter_rng(seed, "split", a) if a else None
        return _result(_split_peg(B, mapping, rng, max_depth), mapping, a + 1)

    return _with_retries(B, m, retries, "peg split", attempt)


def triangular_peg_check_split(
    B: SparseBinaryIntMatrix,
    g: int,
    m: int,
    seed: int,
    retries: int = RANK_RETRIES,
    max_depth: Optional[int] = None,
) -> SplitResult:
    """Triangular PEG-based check splitting.

    B is given in stored ALT form with gap g and so is the returned H. The
    split itself runs on the flipped (upper triangular) matrices: column j of
    the triangle gets H(g + j, j) = 1 from the diagonal's parent, and its other
    edges go to children above row g + j.

    Raises:
        InfeasibleMappingError: a diagonal position has no covering parent
        RankDeficiencyError: H stayed rank deficient for every attempt
    """
    if m == B.rows:
        return _identity_split(B)

    upper = B.mod2().flip()
    mapping = create_parent_mapping_triangular(upper, g, m)

    def attempt(a: int) -> SplitResult:
        rng = counter_rng(seed, "split", a) if a else None
        graph = _split_triangular(upper, g, mapping, rng, max_depth)
        lower = mapping.flip()
        return SplitResult(graph.to_matrix().flip(), lower.coupling(), lower, a + 1)

    return _with_retries(B, m, retries, "triangular split", attempt)


def verify_split(B: SparseBinaryIntMatrix, result: SplitResult) -> bool:
    """Check that `result` is a check split of B.

    Holds iff H is binary, every column of F holds exactly one 1, B = F H over
    the integers (so child rows partition their parent's support) and the
    column weights of H equal those of B.
    """
    H, F = result.H, result.F
    if H.cols != B.cols or F.rows != B.rows or F.cols != H.rows:
        return False
    if not (H.is_binary and F.is_binary):
        return False
    if not np.all(F.col_weights() == 1):
        return False
    if not np.array_equal(H.col_weights(), B.col_weights()):
        return False

    product = int_matmul(F, H)
    return product == SparseBinaryIntMatrix(B.csr, None)

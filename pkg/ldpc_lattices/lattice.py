"""Lattices of the generalized Construction D'.

Given matrices H_0..H_{L-1} with phi(H_l) full rank and H_l = F_l H_{l-1}
(mod 2^l), the lattice is

    {v in Z^n : H_l v = 0 (mod 2^(l+1)) for every l}

and its lattice code C = lattice intersected with [0, 2^L)^n is encoded level by
level: level l is a word of the coset code {c : phi(H_l) c = s_l (mod 2)} whose
syndrome s_l depends on the levels below it.
"""
import math
from dataclasses import dataclass, field
from typing import List, Optional, Protocol, Sequence, Set, Tuple

import numpy as np

from .errors import (
    CodebookTooLargeError,
    DimensionError,
    InconsistentLevelsError,
)
from .matrix.linalg import gf2_rank
from .matrix.sparse import SparseBinaryIntMatrix, int_matmul_mod
from .utils.consts import MAX_CODEBOOK_BITS
from .utils.log import child_logger

log = child_logger(__name__)


@dataclass(frozen=True)
class LatticeSpec:
    """Matrices H_0..H_{L-1} and optional couplings F_1..F_{L-1}.

    H_l is stored with its entries reduced mod 2^(l+1); the lattice only
    depends on H_l modulo that number. `F[l - 1]` is the coupling of level l.
    """

    H: Tuple[SparseBinaryIntMatrix, ...]
    F: Optional[Tuple[SparseBinaryIntMatrix, ...]] = None
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not self.H:
            raise ValueError("a lattice needs at least one level")

        n = self.H[0].cols
        H = []
        for level, matrix in enumerate(self.H):
            if matrix.cols != n:
                raise DimensionError(
                    f"H_{level} has {matrix.cols} columns, H_0 has {n}"
                )
            H.append(matrix.reduce(2 ** (level + 1)))
        object.__setattr__(self, "H", tuple(H))

        if self.F is not None:
            if len(self.F) != len(H) - 1:
                raise DimensionError(
                    f"{len(self.F)} couplings for {len(H)} levels"
                )
            for level, coupling in enumerate(self.F, start=1):
                if coupling.shape != (H[level].rows, H[level - 1].rows):
                    raise DimensionError(
                        f"F_{level} is {coupling.shape}, expected "
                        f"{(H[level].rows, H[level - 1].rows)}"
                    )
            object.__setattr__(self, "F", tuple(self.F))

    @property
    def L(self) -> int:
        return len(self.H)

    @property
    def n(self) -> int:
        return self.H[0].cols

    @property
    def m(self) -> List[int]:
        return [matrix.rows for matrix in self.H]

    @property
    def k(self) -> List[int]:
        return [self.n - m for m in self.m]

    @property
    def rates(self) -> List[float]:
        return [k / self.n for k in self.k]

    @property
    def R(self) -> float:
        return sum(self.rates)

    @property
    def q(self) -> int:
        """Scaling 2^L of the uncoded sublattice."""
        return 2 ** self.L

    @property
    def is_construction_a(self) -> bool:
        return self.L == 1

    def binary(self, level: int) -> SparseBinaryIntMatrix:
        """phi(H_level)."""
        return self.H[level].mod2()


@dataclass
class ValidationReport:
    """Per-level rank status and coupling verification of a spec."""

    ranks: List[int]
    m: List[int]
    coupling: str
    problems: List[str] = field(default_factory=list)
    construction_a: bool = False

    @property
    def full_rank(self) -> List[bool]:
        return [r == m for r, m in zip(self.ranks, self.m)]

    @property
    def valid(self) -> bool:
        return not self.problems

    def __str__(self) -> str:
        lines = [
            "level %d: m=%d rank=%d" % (level, m, r)
            for level, (m, r) in enumerate(zip(self.m, self.ranks))
        ]
        lines.append(f"coupling: {self.coupling}")
        if self.construction_a:
            lines.append("single level: construction A")
        lines.extend(f"problem: {p}" for p in self.problems)
        return "\n".join(lines)


def validate_spec(spec: LatticeSpec) -> ValidationReport:
    """Check the defining conditions of the lattice; never raises."""
    ranks = [gf2_rank(matrix) for matrix in spec.H]
    problems = [
        f"rank deficiency at level {level}: rank {r} < {m}"
        for level, (r, m) in enumerate(zip(ranks, spec.m))
        if r != m
    ]

    if any(a < b for a, b in zip(spec.m, spec.m[1:])):
        problems.append(f"row counts {spec.m} are not non-increasing")

    if spec.F is None:
        coupling = "unverified" if spec.L > 1 else "none"
    else:
        coupling = "verified"
        for level in range(1, spec.L):
            modulus = 2**level
            product = int_matmul_mod(spec.F[level - 1], spec.H[level - 1], modulus)
            if product != spec.H[level].reduce(modulus):
                coupling = "failed"
                problems.append(
                    f"H_{level} is not F_{level} H_{level - 1} mod {modulus}"
                )

    report = ValidationReport(
        ranks, spec.m, coupling, problems, spec.is_construction_a
    )
    if spec.is_construction_a:
        log.info("single-level spec: construction A")
    return report


def compose(levels: Sequence[np.ndarray]) -> np.ndarray:
    """c = sum over l of 2^l c_l."""
    out = np.zeros(np.shape(levels[0]), dtype=np.int64)
    for level, bits in enumerate(levels):
        out += np.asarray(bits, dtype=np.int64) << level
    return out


def decompose(v: np.ndarray, L: int) -> List[np.ndarray]:
    """Binary digits c_0..c_{L-1} of the entries of v mod 2^L."""
    v = np.mod(np.asarray(v, dtype=np.int64), 2**L)
    return [((v >> level) & 1).astype(np.uint8) for level in range(L)]


@dataclass(frozen=True, eq=False)
class LatticeCodeword:
    """Levels c_0..c_{L-1} of a lattice codeword and the syndromes used."""

    levels: Tuple[np.ndarray, ...]
    syndromes: Tuple[np.ndarray, ...]

    @property
    def composed(self) -> np.ndarray:
        return compose(self.levels)


def syndrome(
    spec: LatticeSpec,
    level: int,
    prior_levels: Sequence[np.ndarray],
    strict: bool = True,
) -> np.ndarray:
    """Syndrome s_l = -H_l (sum_{i<l} 2^i c_i) / 2^l mod 2.

    Args:
        spec (LatticeSpec): the lattice
        level (int): l
        prior_levels (Sequence[np.ndarray]): c_0..c_{l-1}
        strict (bool, optional): raise when the product is not divisible by
            2^l; otherwise floor-divide. Defaults to True.

    Returns:
        np.ndarray: uint8 vector of length m_l, one row per word when the
            prior levels are batched as (batch, n) arrays

    Raises:
        InconsistentLevelsError: strict and the prior levels are not a valid
            prefix of a lattice codeword
    """
    H = spec.H[level]
    if level == 0:
        return np.zeros(H.rows, dtype=np.uint8)
    if len(prior_levels) < level:
        raise DimensionError(f"level {level} needs {level} prior levels")

    composed = compose(prior_levels[:level])
    if composed.shape[-1] != H.cols:
        raise DimensionError(
            f"levels of length {composed.shape[-1]}, expected {H.cols}"
        )
    t = (H.csr @ composed.T).T
    scale = 2**level
    if strict and np.any(t % scale):
        raise InconsistentLevelsError(
            f"H_{level} times the prior levels is not divisible by {scale}"
        )
    return ((-t // scale) & 1).astype(np.uint8)


class CosetSolver(Protocol):
    """Anything returning a word of the coset code {c : H c = s (mod 2)}."""

    def encode(self, u: np.ndarray, s: np.ndarray) -> np.ndarray:
        ...


def sequential_encode(
    spec: LatticeSpec,
    coset_encoder: Sequence[CosetSolver],
    messages: Sequence[np.ndarray],
) -> LatticeCodeword:
    """Encode one message per level into a codeword of the lattice code."""
    if len(coset_encoder) != spec.L or len(messages) != spec.L:
        raise DimensionError(f"expected {spec.L} encoders and messages")

    levels: List[np.ndarray] = []
    syndromes: List[np.ndarray] = []
    for level in range(spec.L):
        u = np.asarray(messages[level], dtype=np.uint8)
        if u.shape[0] != spec.k[level]:
            raise DimensionError(
                f"message {level} has length {u.shape[0]}, expected {spec.k[level]}"
            )
        s = syndrome(spec, level, levels)
        c = np.asarray(coset_encoder[level].encode(u, s), dtype=np.uint8)
        levels.append(c)
        syndromes.append(s)

    return LatticeCodeword(tuple(levels), tuple(syndromes))


def is_lattice_point(spec: LatticeSpec, v) -> bool:
    """Exact test of H_l v = 0 (mod 2^(l+1)) for every level."""
    v = np.asarray(v, dtype=np.int64)
    if v.shape[-1] != spec.n:
        raise DimensionError(f"vector of length {v.shape[-1]}, expected {spec.n}")
    return all(
        not np.any(H.matvec(v) % 2 ** (level + 1)) for level, H in enumerate(spec.H)
    )


def enumerate_codebook(spec: LatticeSpec) -> Set[Tuple[int, ...]]:
    """Every point of the lattice code, by exhaustion of [0, 2^L)^n.

    Raises:
        CodebookTooLargeError: n L exceeds the size guard
    """
    bits = spec.n * spec.L
    if bits > MAX_CODEBOOK_BITS:
        raise CodebookTooLargeError(
            f"2^{bits} candidates exceed the 2^{MAX_CODEBOOK_BITS} guard"
        )

    q = spec.q
    powers = q ** np.arange(spec.n, dtype=np.int64)
    codebook: Set[Tuple[int, ...]] = set()
    chunk = 1 << 16

    for start in range(0, 1 << bits, chunk):
        index = np.arange(start, min(start + chunk, 1 << bits), dtype=np.int64)
        V = (index[:, None] // powers[None, :]) % q
        keep = np.ones(index.size, dtype=bool)
        for level, H in enumerate(spec.H):
            keep &= ~np.any((H.csr @ V.T) % 2 ** (level + 1), axis=0)
        codebook.update(map(tuple, V[keep].tolist()))

    return codebook


def volume_to_noise(L: int, R: float, sigma: float) -> float:
    """V^(2/n) / (2 pi e sigma^2) with V = 2^(n (L - R))."""
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    return 2.0 ** (2 * (L - R)) / (2 * math.pi * math.e * sigma**2)


def vnr(spec: LatticeSpec, sigma: float) -> Tuple[float, float]:
    """Volume-to-noise ratio of the lattice at noise level sigma.

    Returns:
        Tuple[float, float]: the ratio and its value in dB
    """
    ratio = volume_to_noise(spec.L, spec.R, sigma)
    return ratio, 10 * math.log10(ratio)


def sigma_for_vnr(L: int, R: float, vnr_db: float) -> float:
    """Noise level at which a lattice of L levels and rate R has the given VNR."""
    ratio = 10 ** (vnr_db / 10)
    return math.sqrt(2.0 ** (2 * (L - R)) / (2 * math.pi * math.e * ratio))


def lift_spec(
    H_bar: Sequence[SparseBinaryIntMatrix],
    F: Sequence[SparseBinaryIntMatrix],
    meta: Optional[dict] = None,
) -> LatticeSpec:
    """Lift nested binary matrices to a generalized Construction D' spec.

    H_0 is H_bar[0] and H_l = F_l H_{l-1} mod 2^l, which reduces mod 2 to
    H_bar[l] whenever H_bar[l] = F_l H_bar[l-1] (mod 2).

    Raises:
        ValueError: a coupling does not relate consecutive binary matrices
    """
    if len(F) != len(H_bar) - 1:
        raise DimensionError(f"{len(F)} couplings for {len(H_bar)} levels")

    H = [H_bar[0].mod2()]
    for level in range(1, len(H_bar)):
        lifted = int_matmul_mod(F[level - 1], H[level - 1], 2**level)
        if lifted.mod2() != H_bar[level].mod2():
            raise ValueError(
                f"F_{level} H_{level - 1} does not reduce to the given H_{level}"
            )
        H.append(lifted)

    return LatticeSpec(tuple(H), tuple(F), dict(meta or {}))

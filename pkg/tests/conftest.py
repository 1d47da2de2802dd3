import numpy as np
import pytest

from ldpc_lattices.lattice import LatticeSpec, lift_spec
from ldpc_lattices.matrix.linalg import gf2_rank
from ldpc_lattices.matrix.sparse import SparseBinaryIntMatrix

M = SparseBinaryIntMatrix.from_dense

H0_SMALL = [[1, 1, 1, 1], [1, 0, 1, 0], [1, 1, 0, 0]]


@pytest.fixture
def example1():
    """Nested submatrices with selector couplings, L = 3."""
    H = (
        M(H0_SMALL, 2),
        M([[1, 1, 1, 1], [1, 0, 1, 0]]),
        M([[1, 1, 1, 1]]),
    )
    F = (M([[1, 0, 0], [0, 1, 0]]), M([[1, 0]]))
    return LatticeSpec(H, F)


@pytest.fixture
def example2():
    """Integer couplings, non-binary H_2 = [3 1 3 1]."""
    F1 = M([[2, 7, 4], [11, 9, 6]])
    F2 = M([[3, 5]])
    H0 = M(H0_SMALL, 2)
    H1 = M([[1, 0, 1, 0], [0, 1, 0, 1]])
    H2 = M([[3, 1, 3, 1]])
    return LatticeSpec((H0, H1, H2), (F1, F2))


@pytest.fixture
def example4():
    """L = 2 with H_1 = F_1 H_0 mod 4 = [0 1 0 3]."""
    F1 = M([[3, 1]])
    H0 = M([[1, 0, 0, 1], [1, 1, 0, 0]], 2)
    H1 = M([[0, 1, 0, 3]])
    return LatticeSpec((H0, H1), (F1,))


@pytest.fixture
def split_example():
    """Check-split chain H_2 -> H_1 -> H_0 with unit column weights."""
    H2 = M([[1] * 8], 2)
    H1 = M([[1, 0, 0, 1, 0, 1, 1, 0], [0, 1, 1, 0, 1, 0, 0, 1]], 2)
    H0 = M(
        [
            [0, 0, 0, 1, 0, 1, 0, 0],
            [1, 0, 0, 0, 0, 0, 1, 0],
            [0, 1, 0, 0, 0, 0, 0, 1],
            [0, 0, 1, 0, 1, 0, 0, 0],
        ],
        2,
    )
    F1 = M([[1, 1, 0, 0], [0, 0, 1, 1]], 2)
    F2 = M([[1, 1]], 2)
    return {"H": (H0, H1, H2), "F": (F1, F2)}


@pytest.fixture
def split_spec(split_example):
    return lift_spec(split_example["H"], split_example["F"])


@pytest.fixture
def small_code():
    return M([[1, 1, 0], [0, 1, 1]], 2)


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture
def full_rank(rng):
    """Draws uniform binary m x n matrices of full rank mod 2."""

    def draw(m, n):
        while True:
            A = rng.integers(0, 2, size=(m, n))
            if gf2_rank(A) == m:
                return A

    return draw

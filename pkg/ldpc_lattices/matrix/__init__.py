from .linalg import gf2_inverse, gf2_matvec, gf2_rank, gf2_rref
from .sparse import SparseBinaryIntMatrix, int_matmul, int_matmul_mod
from .tanner import TannerDistanceOracle, check_variable_distance, girth

__all__ = [
    "SparseBinaryIntMatrix",
    "TannerDistanceOracle",
    "check_variable_distance",
    "gf2_inverse",
    "gf2_matvec",
    "gf2_rank",
    "gf2_rref",
    "girth",
    "int_matmul",
    "int_matmul_mod",
]

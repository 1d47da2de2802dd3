"""LDPC lattices by generalized Construction D'."""
from .errors import (
    ConfigError,
    DimensionError,
    FormatError,
    LatticeError,
    RankDeficiencyError,
)
from .lattice import (
    LatticeCodeword,
    LatticeSpec,
    is_lattice_point,
    lift_spec,
    sequential_encode,
    syndrome,
    validate_spec,
    vnr,
)
from .matrix.sparse import SparseBinaryIntMatrix
from .utils.consts import VERSION

__version__ = VERSION

__all__ = [
    "ConfigError",
    "DimensionError",
    "FormatError",
    "LatticeCodeword",
    "LatticeError",
    "LatticeSpec",
    "RankDeficiencyError",
    "SparseBinaryIntMatrix",
    "is_lattice_point",
    "lift_spec",
    "sequential_encode",
    "syndrome",
    "validate_spec",
    "vnr",
]

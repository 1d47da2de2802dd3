from .family import DesignRecord, design_nested_family, peg_family
from .peg import peg_construct, peg_construct_triangular
from .splitting import (
    ParentMapping,
    SplitResult,
    check_split,
    create_parent_mapping,
    create_parent_mapping_triangular,
    peg_check_split,
    triangular_peg_check_split,
    verify_split,
)

__all__ = [
    "DesignRecord",
    "ParentMapping",
    "SplitResult",
    "check_split",
    "create_parent_mapping",
    "create_parent_mapping_triangular",
    "design_nested_family",
    "peg_check_split",
    "peg_construct",
    "peg_construct_triangular",
    "peg_family",
    "triangular_peg_check_split",
    "verify_split",
]

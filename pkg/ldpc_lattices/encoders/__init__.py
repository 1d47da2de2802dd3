from .alt import AltEncoder, alt_gap, build_alt_encoder, is_alt_form
from .base import CosetEncoder, coset_encode
from .dense import DenseEncoder
from .utils import ENCODER_DICT, build_encoders, get_encoder

__all__ = [
    "AltEncoder",
    "CosetEncoder",
    "DenseEncoder",
    "ENCODER_DICT",
    "alt_gap",
    "build_alt_encoder",
    "build_encoders",
    "coset_encode",
    "get_encoder",
    "is_alt_form",
]

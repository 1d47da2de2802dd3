from .bp import BeliefPropagationDecoder, BpResult, bp_coset_decode
from .channel import channel_llr
from .multistage import (
    MultistageDecoder,
    decode_uncoded_level,
    multistage_decode,
    reencode_shift_decode,
)

__all__ = [
    "BeliefPropagationDecoder",
    "BpResult",
    "MultistageDecoder",
    "bp_coset_decode",
    "channel_llr",
    "decode_uncoded_level",
    "multistage_decode",
    "reencode_shift_decode",
]

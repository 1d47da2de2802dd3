"""Registry of the coset encoders."""
from typing import Dict, Type

from ..matrix.sparse import SparseBinaryIntMatrix
from ..utils.log import child_logger
from . import alt, base, dense

log = child_logger(__name__)

ENCODER_DICT: Dict[str, Type[base.CosetEncoder]] = {
    "alt": alt.AltEncoder,
    "dense": dense.DenseEncoder,
}


def get_encoder(name: str, H: SparseBinaryIntMatrix, **kwargs) -> base.CosetEncoder:
    """Coset encoder `name` built for the level matrix H.

    An unregistered name is logged and replaced by `alt`, which itself falls
    back to Gauss-Jordan encoding when H has no usable ALT form.

    Arguments:
        name {str} -- registry key, "alt" or "dense"
        H {SparseBinaryIntMatrix} -- parity-check matrix of the level

    Keyword Arguments:
        gap_hint {int} -- largest acceptable ALT gap, passed to `build`

    Returns:
        encoders.base.CosetEncoder -- the built encoder
    """
    encoder = ENCODER_DICT.get(name)
    if encoder is None:
        log.warning(
            "no coset encoder `%s` (known: %s), encoding with `alt`",
            name,
            ", ".join(sorted(ENCODER_DICT)),
        )
        encoder = alt.AltEncoder

    built = encoder.build(H, **kwargs)
    log.debug("level %r encoded by %s", H, built.name)
    return built


def build_encoders(H_levels, name: str = "alt", **kwargs):
    """One encoder per level of a lattice, in level order."""
    return [get_encoder(name, H, **kwargs) for H in H_levels]

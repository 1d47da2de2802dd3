"""Labelled seed derivation.

Every random choice in the package flows from one master seed. Derived seeds are
keyed by a purpose label and an index so that, for example, the rank retry `3` of
a design step and trial `3` of a simulation never share a stream.
"""
import zlib

import numpy as np


def _label(purpose: str) -> int:
    return zlib.crc32(purpose.encode("utf-8"))


def derive_seed(seed: int, purpose: str, *index: int) -> int:
    """Derive a 63-bit seed from a master seed, a purpose label and indices.

    Args:
        seed (int): master seed
        purpose (str): label such as "design", "retry" or "trial"
        *index (int): further keys (level, attempt, trial index...)

    Returns:
        int: derived seed
    """
    sequence = np.random.SeedSequence([int(seed), _label(purpose), *map(int, index)])
    return int(sequence.generate_state(1, dtype=np.uint64)[0] >> np.uint64(1))


def counter_rng(seed: int, purpose: str, *index: int) -> np.random.Generator:
    """Counter-based generator (Philox) for a labelled stream.

    Streams are independent of the order in which they are requested, so trials
    can be evaluated in any order or on any worker.
    """
    sequence = np.random.SeedSequence([int(seed), _label(purpose), *map(int, index)])
    return np.random.Generator(np.random.Philox(sequence))

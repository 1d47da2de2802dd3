"""Lattice specs on disk.

A bundle is a directory holding one alist file per matrix and a manifest in the
config format::

    levels = 2
    n = 1024
    m = 788, 103
    h.0 = H_0.alist
    h.1 = H_1.alist
    f.1 = F_1.alist
    meta.seed = 1
"""
import os
from typing import Dict, Optional

from ..errors import FormatError
from ..lattice import LatticeSpec
from ..utils.consts import BUNDLE_MANIFEST
from ..utils.log import child_logger
from .alist import read_alist, write_alist
from .config import Config, dumps_config

log = child_logger(__name__)


def _text(value) -> str:
    if isinstance(value, (list, tuple)):
        return ", ".join(str(v) for v in value)
    return str(value)


def save_bundle(
    spec: LatticeSpec, directory: str, extra: Optional[Dict[str, str]] = None
) -> str:
    """Write the matrices and the manifest of `spec`; returns the manifest path."""
    os.makedirs(directory, exist_ok=True)

    manifest = {
        "levels": str(spec.L),
        "n": str(spec.n),
        "m": _text(spec.m),
    }
    for level, H in enumerate(spec.H):
        name = f"H_{level}.alist"
        write_alist(H, os.path.join(directory, name))
        manifest[f"h.{level}"] = name
    for level, F in enumerate(spec.F or (), start=1):
        name = f"F_{level}.alist"
        write_alist(F, os.path.join(directory, name))
        manifest[f"f.{level}"] = name
    for key, value in spec.meta.items():
        if value is not None:
            manifest[f"meta.{key}"] = _text(value)
    manifest.update(extra or {})

    path = os.path.join(directory, BUNDLE_MANIFEST)
    with open(path, "w", encoding="utf-8") as f:
        f.write(dumps_config(manifest))

    log.info("saved %d-level bundle to %s", spec.L, directory)
    return path


def load_bundle(path: str) -> LatticeSpec:
    """Load a spec from a bundle directory or its manifest file.

    Raises:
        FormatError: missing matrix files or inconsistent manifest
    """
    manifest = path
    if os.path.isdir(path):
        manifest = os.path.join(path, BUNDLE_MANIFEST)
    if not os.path.exists(manifest):
        raise FormatError(f"no bundle manifest at {manifest}")
    directory = os.path.dirname(manifest)

    config = Config.load(manifest)
    if "levels" not in config.values:
        raise FormatError(f"{manifest}: missing `levels`")
    L = config.get_int("levels")

    def matrix(key: str):
        name = config.get_setting(key)
        if name is None:
            return None
        file = os.path.join(directory, name)
        if not os.path.exists(file):
            raise FormatError(f"{manifest}: `{key}` names missing file {name}")
        return read_alist(file)

    H = []
    for level in range(L):
        M = matrix(f"h.{level}")
        if M is None:
            raise FormatError(f"{manifest}: missing `h.{level}`")
        H.append(M)

    F = [matrix(f"f.{level}") for level in range(1, L)]
    if any(f is None for f in F):
        if any(f is not None for f in F):
            raise FormatError(f"{manifest}: couplings given for some levels only")
        F = None

    meta = {
        key[len("meta.") :]: value
        for key, value in config.values.items()
        if key.startswith("meta.")
    }
    spec = LatticeSpec(tuple(H), None if F is None else tuple(F), meta)

    if config.get_int("n") not in (None, spec.n):
        raise FormatError(f"{manifest}: n = {config.get_int('n')} but H_0 has {spec.n}")
    return spec

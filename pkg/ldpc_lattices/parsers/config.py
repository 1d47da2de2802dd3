"""Flat `key = value` configuration with layered lookup.

    # comment
    n = 1000
    m = 500, 22
    sim.points = 1.2, 1.356, 1.5

A value is looked up in the command-line overrides, then the config file, then
the named preset, then the built-in defaults; the first layer holding the key
wins. Run manifests are written in the same format, so every manifest is a
valid config.
"""
import os
from typing import Callable, Dict, List, Optional, TypeVar

from ..errors import ConfigError
from ..utils.consts import DEFAULTS, PRESETS
from ..utils.log import child_logger

log = child_logger(__name__)

T = TypeVar("T")


def loads_config(text: str, path: str = "<config>") -> Dict[str, str]:
    """Parse config text into a dict of raw string values."""
    values: Dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or not key:
            raise ConfigError(f"{path}:{lineno}: expected `key = value`")
        if key in values:
            log.warning("%s:%d: `%s` set twice, keeping the last", path, lineno, key)
        values[key] = value.strip()
    return values


def dumps_config(values: Dict[str, str]) -> str:
    """Config text of `values`, keys sorted."""
    return "".join(f"{key} = {values[key]}\n" for key in sorted(values))


class Config:
    """Layered settings.

    Arguments:
        values {dict} -- settings read from a config file

    Keyword Arguments:
        overrides {dict} -- command-line settings (default: {None})
        preset {str} -- name of a built-in design point (default: {None})
        path {str} -- where `values` came from, for messages (default: {None})
    """

    def __init__(
        self,
        values: Optional[Dict[str, str]] = None,
        overrides: Optional[Dict[str, str]] = None,
        preset: Optional[str] = None,
        path: Optional[str] = None,
    ):
        self.values = dict(values or {})
        self.overrides = {k: str(v) for k, v in (overrides or {}).items()}
        self.path = path or "<config>"

        preset = preset or self.overrides.get("preset") or self.values.get("preset")
        if preset is not None and preset not in PRESETS:
            raise ConfigError(
                f"unknown preset `{preset}`, choose from {', '.join(sorted(PRESETS))}"
            )
        self.preset = preset

    @classmethod
    def load(cls, path: Optional[str], **kwargs) -> "Config":
        """Read a config file; a missing path gives an empty file layer."""
        if path is None:
            return cls(**kwargs)
        if not os.path.exists(path):
            raise ConfigError(f"config file `{path}` does not exist")
        with open(path, "r", encoding="utf-8") as f:
            return cls(loads_config(f.read(), path), path=path, **kwargs)

    def _layers(self) -> List[Dict[str, str]]:
        layers = [self.overrides, self.values]
        if self.preset is not None:
            layers.append(PRESETS[self.preset])
        layers.append(DEFAULTS)
        return layers

    def get_setting(self, key: str, default: Optional[str] = None) -> Optional[str]:
        """Get the passed setting from the aggregated layers.

        Arguments:
            key {str} -- String of the key to get

        Keyword Arguments:
            default {str} -- value in case the setting is not found (default: None)

        Returns:
            {str} or {None} -- value of the setting
        """
        for layer in self._layers():
            if key in layer:
                return layer[key]
        return default

    def __contains__(self, key: str) -> bool:
        return self.get_setting(key) is not None

    def require(self, key: str) -> str:
        value = self.get_setting(key)
        if value is None or value == "":
            raise ConfigError(f"missing required key `{key}` in {self.path}")
        return value

    def _convert(self, key: str, value: str, kind: Callable[[str], T], what: str) -> T:
        try:
            return kind(value)
        except ValueError:
            raise ConfigError(f"`{key} = {value}` in {self.path} is not {what}")

    def get_int(self, key: str, default: Optional[int] = None) -> Optional[int]:
        value = self.get_setting(key)
        if value is None:
            return default
        return self._convert(key, value, int, "an integer")

    def get_float(self, key: str, default: Optional[float] = None) -> Optional[float]:
        value = self.get_setting(key)
        if value is None:
            return default
        return self._convert(key, value, float, "a number")

    def get_list(
        self, key: str, kind: Callable[[str], T] = str, default=None
    ) -> Optional[List[T]]:
        """Comma separated list, converted item by item."""
        value = self.get_setting(key)
        if value is None:
            return default
        items = [item.strip() for item in value.split(",") if item.strip()]
        return [self._convert(key, item, kind, "a list of values") for item in items]

    def resolved(self, keys=None) -> Dict[str, str]:
        """Every set key with the value that wins, or just `keys`."""
        if keys is None:
            keys = set()
            for layer in self._layers():
                keys.update(layer)
        out = {}
        for key in keys:
            value = self.get_setting(key)
            if value is not None:
                out[key] = value
        return out

from .alist import dumps_alist, loads_alist, read_alist, write_alist
from .bundle import load_bundle, save_bundle
from .config import Config, dumps_config, loads_config

__all__ = [
    "Config",
    "dumps_alist",
    "dumps_config",
    "load_bundle",
    "loads_alist",
    "loads_config",
    "read_alist",
    "save_bundle",
    "write_alist",
]

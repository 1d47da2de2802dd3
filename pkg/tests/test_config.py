import pytest

from ldpc_lattices.errors import ConfigError
from ldpc_lattices.parsers.config import Config, dumps_config, loads_config

TEXT = """\
# design point
n = 1000
m = 500, 22   # two levels
sim.points = 1.2, 1.356,1.5

seed=7
"""


class TestLoads:
    def test_values(self):
        values = loads_config(TEXT)
        assert values == {
            "n": "1000",
            "m": "500, 22",
            "sim.points": "1.2, 1.356,1.5",
            "seed": "7",
        }

    def test_missing_separator(self):
        with pytest.raises(ConfigError, match="run.conf:2:"):
            loads_config("n = 4\nlevels 2\n", "run.conf")

    def test_empty_key(self):
        with pytest.raises(ConfigError, match=":1:"):
            loads_config("= 4\n")

    def test_last_assignment_wins(self):
        assert loads_config("n = 4\nn = 8\n") == {"n": "8"}

    def test_dumped_text_parses(self):
        values = {"m": "788, 103", "n": "1024", "run.command": "design"}
        text = dumps_config(values)
        assert text.splitlines()[0] == "m = 788, 103"
        assert loads_config(text) == values


class TestLayers:
    def test_precedence(self):
        config = Config(
            {"n": "2000", "dv": "4"}, overrides={"n": "512"}, preset="n1000"
        )
        assert config.get_setting("n") == "512"
        assert config.get_setting("dv") == "4"
        assert config.get_setting("gap") == "22"
        assert config.get_setting("sim.mode") == "full"
        assert config.get_setting("missing", "x") == "x"

    def test_preset_from_file(self):
        config = Config({"preset": "n1024"})
        assert config.get_list("m", int) == [788, 103]

    def test_unknown_preset(self):
        with pytest.raises(ConfigError, match="unknown preset"):
            Config(preset="n42")

    def test_typed_getters(self):
        config = Config({"n": "1000", "sigma": "0.25", "bad": "1.5"})
        assert config.get_int("n") == 1000
        assert config.get_float("sigma") == 0.25
        assert config.get_int("absent", 3) == 3
        with pytest.raises(ConfigError, match="not an integer"):
            config.get_int("bad")

    def test_lists(self):
        config = Config({"points": "1.2, 1.356,1.5,"})
        assert config.get_list("points", float) == [1.2, 1.356, 1.5]
        with pytest.raises(ConfigError):
            Config({"m": "500, x"}).get_list("m", int)

    def test_require(self):
        config = Config({"n": ""}, path="run.conf")
        assert "levels" in config
        with pytest.raises(ConfigError, match="`n` in run.conf"):
            config.require("n")

    def test_resolved(self):
        config = Config({"n": "8"}, overrides={"seed": "3"})
        resolved = config.resolved()
        assert resolved["n"] == "8"
        assert resolved["seed"] == "3"
        assert resolved["encoder"] == "alt"
        assert config.resolved(["n", "missing"]) == {"n": "8"}


class TestLoad:
    def test_file(self, tmp_path):
        path = tmp_path / "run.conf"
        path.write_text(TEXT)
        config = Config.load(str(path), overrides={"seed": "9"})
        assert config.get_int("n") == 1000
        assert config.get_int("seed") == 9
        assert config.path == str(path)

    def test_no_file(self):
        assert Config.load(None).get_setting("dv") == "3"

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError, match="does not exist"):
            Config.load(str(tmp_path / "absent.conf"))

import numpy as np
import pytest
from numpy.testing import assert_array_equal

from ldpc_lattices.commands import (
    EXIT_CONFIG,
    EXIT_DESIGN,
    EXIT_IO,
    EXIT_OK,
    RunManifest,
    main,
    read_messages,
    read_received,
)
from ldpc_lattices.errors import FormatError
from ldpc_lattices.lattice import is_lattice_point
from ldpc_lattices.parsers.bundle import load_bundle
from ldpc_lattices.parsers.config import loads_config
from ldpc_lattices.utils.consts import BUNDLE_MANIFEST, RUN_MANIFEST

DESIGN = "n = 8\nlevels = 3\nm = 4, 2, 1\ndv = 1\n"
MESSAGES = "1010\n110011  # level 1\n0101010\n"


def read_conf(path):
    return loads_config(path.read_text())


@pytest.fixture
def bundle(tmp_path):
    conf = tmp_path / "design.conf"
    conf.write_text(DESIGN)
    out = tmp_path / "run"
    assert main(["design", "--config", str(conf), "--out-dir", str(out)]) == EXIT_OK
    return out


@pytest.fixture
def codeword(tmp_path, bundle):
    messages = tmp_path / "u.txt"
    messages.write_text(MESSAGES)
    args = ["encode", "--bundle", str(bundle), "--messages", str(messages)]
    assert main(args + ["--out-dir", str(tmp_path / "enc")]) == EXIT_OK
    result = read_conf(tmp_path / "enc" / "codeword.txt")
    return np.array(result["codeword"].split(), dtype=np.int64)


class TestDesign:
    def test_outputs(self, bundle):
        for name in (BUNDLE_MANIFEST, "H_0.alist", "F_2.alist", "design.jsonl"):
            assert (bundle / name).exists()
        manifest = read_conf(bundle / RUN_MANIFEST)
        assert manifest["run.command"] == "design"
        assert manifest["m"] == "4, 2, 1"
        assert load_bundle(str(bundle)).m == [4, 2, 1]

    def test_manifest_replays(self, tmp_path, bundle):
        again = tmp_path / "again"
        args = ["design", "--config", str(bundle / RUN_MANIFEST)]
        assert main(args + ["--out-dir", str(again)]) == EXIT_OK
        for name in ("H_0.alist", "H_1.alist", "H_2.alist", "F_1.alist"):
            assert (again / name).read_text() == (bundle / name).read_text()

    def test_missing_dimension(self, tmp_path):
        assert main(["design", "--out-dir", str(tmp_path)]) == EXIT_CONFIG

    def test_impossible_degree(self, tmp_path):
        args = ["design", "--set", "n=8", "--set", "m=2,1", "--set", "dv=3"]
        assert main(args + ["--out-dir", str(tmp_path)]) == EXIT_CONFIG

    def test_rank_deficient(self, tmp_path):
        args = ["design", "--set", "n=4", "--set", "m=3,3", "--set", "dv=3"]
        args += ["--set", "design.retries=1", "--out-dir", str(tmp_path)]
        assert main(args) == EXIT_DESIGN

    def test_malformed_override(self, tmp_path):
        assert main(["design", "--set", "n", "--out-dir", str(tmp_path)]) == EXIT_CONFIG

    def test_unknown_command(self):
        with pytest.raises(SystemExit):
            main(["plot"])


class TestEncodeDecode:
    def test_codeword_is_lattice_point(self, bundle, codeword):
        spec = load_bundle(str(bundle))
        assert is_lattice_point(spec, codeword)
        assert np.all((codeword >= 0) & (codeword < 8))

    def test_round_trip(self, tmp_path, bundle, codeword):
        received = tmp_path / "r.txt"
        noise = 0.03 * np.array([1, -1, 1, -1, 1, -1, 1, -1])
        received.write_text(" ".join(f"{x:.4f}" for x in codeword + noise) + "\n")

        out = tmp_path / "dec"
        args = ["decode", "--bundle", str(bundle), "--received", str(received)]
        assert main(args + ["--sigma", "0.1", "--out-dir", str(out)]) == EXIT_OK

        result = read_conf(out / "decision.txt")
        assert_array_equal(np.array(result["codeword"].split(), dtype=int), codeword)
        assert result["member"] == "true"
        assert [result[f"u.{level}"] for level in range(3)] == [
            "1010",
            "110011",
            "0101010",
        ]
        assert all(result[f"converged.{level}"] == "true" for level in range(3))

    def test_decode_needs_operating_point(self, tmp_path, bundle, codeword):
        received = tmp_path / "r.txt"
        received.write_text(" ".join(map(str, codeword)))
        args = ["decode", "--bundle", str(bundle), "--received", str(received)]
        assert main(args + ["--out-dir", str(tmp_path)]) == EXIT_CONFIG

    def test_missing_bundle(self, tmp_path):
        messages = tmp_path / "u.txt"
        messages.write_text(MESSAGES)
        args = ["encode", "--bundle", str(tmp_path / "nowhere")]
        args += ["--messages", str(messages), "--out-dir", str(tmp_path)]
        assert main(args) == EXIT_IO

    def test_bad_messages(self, tmp_path, bundle):
        messages = tmp_path / "u.txt"
        messages.write_text("1010\n11x011\n0101010\n")
        args = ["encode", "--bundle", str(bundle), "--messages", str(messages)]
        assert main(args + ["--out-dir", str(tmp_path)]) == EXIT_IO


class TestInputFiles:
    def test_message_line_numbers(self, tmp_path, bundle):
        spec = load_bundle(str(bundle))
        path = tmp_path / "u.txt"
        path.write_text("# header\n1010\n11x011\n0101010\n")
        with pytest.raises(FormatError, match="u.txt:3:"):
            read_messages(str(path), spec)

    def test_message_lengths(self, tmp_path, bundle):
        spec = load_bundle(str(bundle))
        path = tmp_path / "u.txt"
        path.write_text("1010\n11001\n0101010\n")
        with pytest.raises(FormatError, match="has 5 bits, expected 6"):
            read_messages(str(path), spec)

    def test_messages(self, tmp_path, bundle):
        path = tmp_path / "u.txt"
        path.write_text(MESSAGES)
        messages = read_messages(str(path), load_bundle(str(bundle)))
        assert_array_equal(messages[1], [1, 1, 0, 0, 1, 1])

    def test_received(self, tmp_path):
        path = tmp_path / "r.txt"
        path.write_text("0.5 1.5\n2.5  # tail\n3\n")
        assert_array_equal(read_received(str(path), 4), [0.5, 1.5, 2.5, 3.0])
        with pytest.raises(FormatError, match="expected 5 values"):
            read_received(str(path), 5)

    def test_received_token(self, tmp_path):
        path = tmp_path / "r.txt"
        path.write_text("0.5 x\n")
        with pytest.raises(FormatError, match=":1:"):
            read_received(str(path), 2)


class TestSimulateReport:
    def test_sweep_and_report(self, tmp_path, bundle):
        out = tmp_path / "sim"
        args = ["simulate", "--bundle", str(bundle), "--mode", "genie"]
        args += ["--set", "sim.unit=sigma", "--set", "sim.points=0.3, 0.2"]
        args += ["--set", "sim.max_trials=64", "--out-dir", str(out)]
        assert main(args) == EXIT_OK

        lines = (out / "sweep.csv").read_text().splitlines()
        assert len(lines) == 3
        assert lines[0].startswith("sigma,vnr_db,trials,errors_l0")
        manifest = read_conf(out / RUN_MANIFEST)
        assert manifest["sim.mode"] == "genie"
        assert manifest["sim.points"] == "0.3, 0.2"

        bounds = (out / "sweep.intervals.csv").read_text().splitlines()
        assert len(bounds) == 3
        assert bounds[0].startswith("sigma,vnr_db,wer_l0_lo,wer_l0_hi,")
        assert bounds[0].endswith("wer_total_lo,wer_total_hi")

        report = tmp_path / "report"
        args = ["report", "--csv", str(out / "sweep.csv"), "--out-dir", str(report)]
        assert main(args) == EXIT_OK
        header, *rows = (report / "sweep.dat").read_text().splitlines()
        assert header.startswith("# vnr_db wer_coded wer_coded_lo wer_coded_hi ")
        assert len(rows) == 2
        assert all(len(row.split()) == 16 for row in rows)

    def test_bad_unit(self, tmp_path, bundle):
        args = ["simulate", "--bundle", str(bundle), "--set", "sim.unit=ebn0"]
        assert main(args + ["--out-dir", str(tmp_path)]) == EXIT_CONFIG


class TestManifest:
    def test_bookkeeping_keys(self, tmp_path):
        manifest = RunManifest("encode", {"encoder": "alt"}, inputs=["a", "b"])
        values = loads_config(manifest.dumps())
        assert values["run.command"] == "encode"
        assert values["run.inputs"] == "a, b"
        assert values["encoder"] == "alt"
        assert not (tmp_path / RUN_MANIFEST).exists()
        manifest.write(str(tmp_path))
        assert (tmp_path / RUN_MANIFEST).exists()


@pytest.mark.slow
def test_rate_design(tmp_path):
    conf = tmp_path / "rates.conf"
    conf.write_text(
        "n = 128\nrates.target_pe = 0.1\nrates.r1_range = 0.9, 0.95\n"
        "rates.grid = 3\nrates.trials = 200\nrates.min_errors = 20\n"
    )
    out = tmp_path / "out"
    assert main(["rates", "--config", str(conf), "--out-dir", str(out)]) == EXIT_OK
    result = read_conf(out / "rates.conf")
    assert result["levels"] == "2"
    assert len(result["m"].split(",")) == 2

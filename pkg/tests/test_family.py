import numpy as np
import pytest
from numpy.testing import assert_array_equal

from ldpc_lattices.design.family import (
    design_nested_family,
    peg_family,
    read_design_report,
    write_design_report,
)
from ldpc_lattices.encoders.alt import is_alt_form
from ldpc_lattices.lattice import validate_spec


@pytest.fixture(scope="module")
def family():
    return design_nested_family(96, [48, 12], 3, seed=3)


class TestNestedFamily:
    def test_valid_lattice(self, family):
        spec, records = family
        report = validate_spec(spec)
        assert report.valid
        assert report.coupling == "verified"
        assert spec.m == [48, 12]

    def test_column_weights(self, family):
        spec, _ = family
        for level in range(spec.L):
            assert_array_equal(spec.binary(level).col_weights(), np.full(96, 3))

    def test_records(self, family):
        spec, records = family
        assert [r.level for r in records] == [0, 1]
        assert [r.m for r in records] == spec.m
        assert all(r.rank == r.m for r in records)
        assert records[0].method == "peg"
        assert spec.meta["m"] == [48, 12]

    def test_reproducible(self, family):
        again = design_nested_family(96, [48, 12], 3, seed=3)
        assert again.spec.H == family.spec.H
        assert again.spec.F == family.spec.F

    def test_triangular_levels(self):
        spec, records = design_nested_family(120, [48, 12], 3, seed=5, gap=4)
        assert validate_spec(spec).valid
        for level in range(spec.L):
            assert is_alt_form(spec.binary(level), 4)
        assert all(r.gap <= 4 for r in records)

    def test_three_levels_plain(self):
        spec, records = design_nested_family(
            96, [48, 24, 12], 3, seed=7, method="plain"
        )
        assert validate_spec(spec).valid
        assert len(records) == 3
        assert all(r.method == "plain" for r in records[:2])

    def test_rejects(self):
        with pytest.raises(ValueError, match="design method"):
            design_nested_family(96, [48, 12], 3, seed=1, method="random")
        with pytest.raises(ValueError, match="non-increasing"):
            design_nested_family(96, [12, 48], 3, seed=1)


class TestDesignReport:
    def test_jsonl(self, tmp_path, family):
        path = str(tmp_path / "out" / "design.jsonl")
        write_design_report(family.records, path)
        with open(path) as f:
            assert len(f.read().splitlines()) == 2
        assert read_design_report(path) == family.records


class TestPegFamily:
    def test_rate_to_rows(self):
        build = peg_family(64, 3, seed=1)
        H = build(0.5)
        assert H.shape == (32, 64)
        assert build(0.5) == H

    def test_gap(self):
        H = peg_family(64, 3, seed=1, gap=2)(0.75)
        assert H.shape == (16, 64)
        assert is_alt_form(H, 2)

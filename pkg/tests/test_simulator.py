import time

import numpy as np
import pytest

from ldpc_lattices.design.family import design_nested_family
from ldpc_lattices.design.peg import peg_construct
from ldpc_lattices.lattice import LatticeSpec, vnr
from ldpc_lattices.sim.bounds import pe_uncoded
from ldpc_lattices.sim.simulator import (
    SimConfig,
    Simulator,
    WerPoint,
    check_monotone,
    estimate_code_wer,
    simulate_point,
    sweep,
)


def config(spec, **kwargs):
    kwargs.setdefault("unit", "sigma")
    kwargs.setdefault("encoder", "dense")
    kwargs.setdefault("max_trials", 256)
    kwargs.setdefault("min_errors", 10**6)
    return SimConfig(spec, **kwargs)


def point(vnr_db, errors, trials):
    return WerPoint(0.3, vnr_db, trials, [errors], errors, 0.0)


class TestSimConfig:
    @pytest.mark.parametrize(
        "kwargs",
        [
            {"unit": "ebn0"},
            {"mode": "oracle"},
            {"uncoded": "ignored"},
            {"decoder": "minsum"},
            {"min_errors": 0},
            {"batch_size": 0},
            {"points": [0.3, -0.1]},
        ],
    )
    def test_rejects(self, split_spec, kwargs):
        with pytest.raises(ValueError):
            config(split_spec, **kwargs)

    def test_vnr_points(self, split_spec):
        cfg = SimConfig(split_spec, points=[1.0, 2.5])
        for target, sigma in zip(cfg.points, cfg.sigmas()):
            assert vnr(split_spec, sigma)[1] == pytest.approx(target)


class TestSimulator:
    def test_deterministic(self, split_spec):
        a = simulate_point(config(split_spec), 0.35)
        b = simulate_point(config(split_spec), 0.35)
        assert a.level_errors == b.level_errors
        assert a.coded_errors == b.coded_errors

    def test_draws_depend_on_trial_only(self, split_spec):
        sim = Simulator(config(split_spec, seed=9))
        m1, z1 = sim.draw(17, 0.3)
        m2, z2 = sim.draw(17, 0.3)
        assert all(np.array_equal(a, b) for a, b in zip(m1, m2))
        assert np.array_equal(z1, z2)
        assert not np.array_equal(z1, sim.draw(18, 0.3)[1])

    def test_independent_of_batching(self, split_spec):
        a = simulate_point(config(split_spec, batch_size=64), 0.35)
        b = simulate_point(config(split_spec, batch_size=7), 0.35)
        assert a.trials == b.trials == 256
        assert a.level_errors == b.level_errors

    def test_worker_processes(self, split_spec):
        single = sweep(config(split_spec, points=[0.35, 0.3]))
        pooled = sweep(config(split_spec, points=[0.35, 0.3], threads=2))
        assert [p.level_errors for p in single] == [p.level_errors for p in pooled]

    def test_tiny_noise(self, split_spec):
        result = simulate_point(config(split_spec, max_trials=128, min_errors=1), 0.05)
        assert result.coded_errors == 0
        assert result.trials == 128
        assert result.low_confidence
        assert result.wer_total == pytest.approx(pe_uncoded(8, 8, 0.05))

    def test_stop_rule(self, split_spec):
        result = simulate_point(
            config(split_spec, max_trials=10**5, min_errors=20), 0.6
        )
        assert result.coded_errors >= 20
        assert result.trials < 10**5
        assert not result.low_confidence

    def test_lower_levels_see_scaled_noise(self, split_spec):
        # level l decodes at sigma / 2^l, so errors concentrate on level 0
        result = simulate_point(config(split_spec, mode="genie"), 0.45)
        assert result.level_errors[0] > 0
        assert result.level_errors[0] >= result.level_errors[2]

    def test_reencoding_decoder(self, split_spec):
        a = simulate_point(config(split_spec), 0.3)
        b = simulate_point(config(split_spec, decoder="reencode"), 0.3)
        assert abs(a.coded_errors - b.coded_errors) <= max(3, a.coded_errors // 10)

    def test_simulated_uncoded_level(self, small_code):
        spec = LatticeSpec((small_code,))
        result = simulate_point(config(spec, uncoded="simulated"), 0.3)
        assert result.total_errors is not None
        assert result.total_errors >= result.coded_errors
        assert result.wer_total == result.total_errors / result.trials

    def test_empty_sweep(self, split_spec):
        assert sweep(config(split_spec)) == []


class TestMonotone:
    def test_decreasing(self):
        points = [point(1.0, 500, 1000), point(2.0, 50, 1000), point(3.0, 1, 1000)]
        assert check_monotone(points)

    def test_significant_rise(self):
        assert not check_monotone([point(1.0, 0, 10**5), point(2.0, 500, 1000)])

    def test_noise_is_tolerated(self):
        assert check_monotone([point(1.0, 100, 1000), point(2.0, 104, 1000)])


class TestCodeWer:
    @pytest.fixture(scope="class")
    def code(self):
        return peg_construct(64, 32, 3, seed=4)

    def test_quiet_channel(self, code):
        result = estimate_code_wer(code, 0.12, max_trials=128)
        assert result.coded_errors == 0
        assert result.low_confidence

    def test_noisy_channel(self, code):
        result = estimate_code_wer(code, 0.9, max_trials=10**4, min_errors=10)
        assert result.coded_errors >= 10
        assert result.level_wers == [result.wer_coded]
        lower, upper = result.interval()
        assert lower <= result.wer_coded <= upper


@pytest.mark.slow
class TestDeskScale:
    """n = 1000 two-level design: R_0 = 0.5, R_1 = 0.978, dv = 3, gap 22."""

    def test_design_point_wer(self):
        family = design_nested_family(1000, [500, 22], 3, seed=1, gap=22)
        cfg = SimConfig(family.spec, points=[1.356], max_trials=200_000)
        (result,) = Simulator(cfg).sweep()
        assert result.coded_errors >= 100
        assert result.wer_total <= 2e-2

    def test_time_per_symbol_is_flat(self):
        per_symbol = {}
        for n, m in ((1000, [500, 22]), (10000, [5000, 220])):
            family = design_nested_family(n, m, 3, seed=1, gap=22)
            sim = Simulator(SimConfig(family.spec, max_iter=20))
            sigma = sim.cfg.sigma(1.356)
            sim.run_batch(sigma, 0, 2)

            words = 200_000 // n
            began = time.perf_counter()
            sim.run_batch(sigma, 0, words)
            per_symbol[n] = (time.perf_counter() - began) / (words * n)
        assert per_symbol[10000] < 2 * per_symbol[1000]

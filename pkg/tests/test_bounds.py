import numpy as np
import pytest

from ldpc_lattices.sim.bounds import (
    clopper_pearson,
    pe_uncoded,
    q_function,
    sigma_for_uncoded_pe,
    union_bound,
)


class TestQFunction:
    def test_values(self):
        assert q_function(0.0) == pytest.approx(0.5)
        assert q_function(5.9172) == pytest.approx(1.63e-9, rel=0.02)

    def test_vectorized(self):
        x = np.array([-1.0, 0.0, 1.0])
        assert np.allclose(q_function(x) + q_function(-x), 1.0)


class TestUncoded:
    def test_design_point(self):
        assert pe_uncoded(4, 1024, 0.3380) == pytest.approx(3.33e-6, rel=0.05)

    def test_single_coordinate(self):
        assert pe_uncoded(2, 1, 0.5) == pytest.approx(2 * float(q_function(2.0)))

    def test_monotone_in_sigma(self):
        values = [pe_uncoded(4, 1000, s) for s in np.linspace(0.2, 1.5, 30)]
        assert all(a <= b for a, b in zip(values, values[1:]))

    def test_tiny_probability_survives(self):
        assert 0.0 < pe_uncoded(8, 1000, 0.2) < 1e-50

    def test_inverse(self):
        sigma = sigma_for_uncoded_pe(4, 1024, 1e-6)
        assert pe_uncoded(4, 1024, sigma) == pytest.approx(1e-6, rel=1e-6)

    def test_invalid(self):
        with pytest.raises(ValueError):
            pe_uncoded(4, 10, 0.0)
        with pytest.raises(ValueError):
            sigma_for_uncoded_pe(4, 10, 1.0)


class TestUnionBound:
    def test_sum(self):
        assert union_bound([1e-3, 2e-4], 1e-5) == pytest.approx(1.21e-3)

    def test_capped(self):
        assert union_bound([0.8, 0.5], 0.1) == 1.0


class TestClopperPearson:
    def test_no_errors(self):
        lower, upper = clopper_pearson(0, 100)
        assert lower == 0.0
        assert upper == pytest.approx(1 - 0.025 ** (1 / 100))

    def test_all_errors(self):
        lower, upper = clopper_pearson(100, 100)
        assert upper == 1.0
        assert lower == pytest.approx(0.025 ** (1 / 100))

    def test_contains_estimate(self):
        lower, upper = clopper_pearson(5, 100)
        assert lower < 0.05 < upper

    def test_narrows_with_trials(self):
        small = clopper_pearson(10, 100)
        large = clopper_pearson(1000, 10000)
        assert large[1] - large[0] < small[1] - small[0]

    def test_without_trials(self):
        assert clopper_pearson(0, 0) == (0.0, 1.0)

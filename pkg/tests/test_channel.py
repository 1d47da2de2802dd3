import numpy as np
import pytest
from numpy.testing import assert_allclose

from ldpc_lattices.decoders.channel import (
    alias_offsets,
    channel_llr,
    level_observation,
)
from ldpc_lattices.utils.consts import LLR_MAX


def brute_llr(r, sigma):
    k = np.arange(-50, 51)
    p0 = np.exp(-((r - 2 * k) ** 2) / (2 * sigma**2)).sum()
    p1 = np.exp(-((r - 1 - 2 * k) ** 2) / (2 * sigma**2)).sum()
    return np.log(p0) - np.log(p1)


class TestChannelLlr:
    def test_midpoint_is_neutral(self):
        assert channel_llr(0.5, 0.4) == pytest.approx(0.0, abs=1e-12)
        assert channel_llr(1.5, 0.4) == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("sigma", [0.3, 0.7, 1.5, 3.0])
    def test_alias_sum(self, rng, sigma):
        r = rng.uniform(0, 2, size=25)
        expected = [brute_llr(x, sigma) for x in r]
        assert_allclose(channel_llr(r, sigma), expected, rtol=1e-9, atol=1e-9)

    def test_saturation(self):
        assert channel_llr(0.0, 0.05) == LLR_MAX
        assert channel_llr(1.0, 0.05) == -LLR_MAX
        assert channel_llr(0.0, 0.05, llr_max=10.0) == 10.0

    def test_below_saturation(self):
        # bit 1 has two nearest aliases, at -1 and +1
        assert channel_llr(0.0, 0.1) == pytest.approx(50.0 - np.log(2), rel=1e-9)

    def test_half_period_flips_sign(self, rng):
        r = rng.uniform(0, 1, size=50)
        assert_allclose(channel_llr(r + 1, 0.6), -channel_llr(r, 0.6), atol=1e-12)

    def test_shape(self, rng):
        r = rng.uniform(0, 2, size=(3, 7))
        assert channel_llr(r, 0.5).shape == (3, 7)

    def test_sigma_positive(self):
        with pytest.raises(ValueError):
            channel_llr(0.2, 0.0)

    def test_offsets_cover_span(self):
        shifts = alias_offsets(2.0)
        assert shifts.min() <= -16.0
        assert shifts.max() >= 16.0


class TestLevelObservation:
    def test_first_level(self):
        r = np.array([1.3, 5.1])
        assert_allclose(level_observation(r, [], 0), [1.3, 1.1])

    def test_strips_decided_levels(self):
        r = np.array([1.3, 5.1])
        out = level_observation(r, [np.array([1, 1])], 1)
        assert_allclose(out, [0.15, 0.05])

    def test_two_decided_levels(self):
        r = np.array([7.2, -0.4])
        decided = [np.array([1, 0]), np.array([1, 0])]
        # (7.2 - 3) / 4 and -0.4 / 4, both mod 2
        assert_allclose(level_observation(r, decided, 2), [1.05, 1.9])

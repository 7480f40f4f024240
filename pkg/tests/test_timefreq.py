import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from warstats.errors import DegenerateInputError
from warstats.synth import gen_white_noise
from warstats.timefreq import (
    autocorrelation,
    autocovariance,
    periodogram,
    whiteness_check,
)


def naive_autocovariance(series, lag):
    """Double-loop oracle with the biased 1/T factor."""
    T = len(series)
    mean = sum(series) / T
    total = 0.0
    for t in range(T - lag):
        total += (series[t] - mean) * (series[t + lag] - mean)
    return total / T


finite_series = st.lists(st.floats(-1e3, 1e3), min_size=2, max_size=256)


class TestAutocovariance:
    def test_lag0_hand_value(self):
        # mean 2, squared deviations 1+0+1, over T=3
        assert autocovariance([1.0, 2.0, 3.0], 0) == pytest.approx(2 / 3)

    @given(finite_series)
    def test_lag0_is_biased_variance(self, series):
        y = np.asarray(series)
        assert autocovariance(series, 0) == pytest.approx(float(np.var(y)), abs=1e-9)

    @settings(max_examples=100)
    @given(finite_series, st.randoms(use_true_random=False))
    def test_oracle_equivalence_all_lags(self, series, rnd):
        for lag in range(len(series)):
            assert autocovariance(series, lag) == pytest.approx(
                naive_autocovariance(series, lag), rel=1e-10, abs=1e-10
            )

    def test_lag_out_of_range(self):
        with pytest.raises(ValueError):
            autocovariance([1.0, 2.0], 2)

    def test_too_short(self):
        with pytest.raises(DegenerateInputError):
            autocovariance([1.0], 0)


class TestAutocorrelation:
    def test_r0_is_one(self):
        acf = autocorrelation([0.0, 0.0, 5.0, 0.0, 0.0])
        assert acf.r[0] == 1.0

    def test_zero_variance_rejected(self):
        with pytest.raises(DegenerateInputError):
            autocorrelation([3.0, 3.0, 3.0])

    def test_se_white_headline_lengths(self):
        acf601 = autocorrelation(gen_white_noise(601, seed=1))
        assert round(acf601.se_white, 4) == 0.0408
        acf1205 = autocorrelation(gen_white_noise(1205, seed=1))
        assert round(acf1205.se_white, 4) == 0.0288

    def test_bartlett_lag1_equals_white(self):
        acf = autocorrelation(gen_white_noise(100, seed=7))
        assert acf.se_bartlett[1] == acf.se_white

    def test_bartlett_non_decreasing(self):
        acf = autocorrelation(gen_white_noise(300, seed=3))
        se = acf.se_bartlett
        assert all(a <= b + 1e-15 for a, b in zip(se, se[1:]))

    def test_bartlett_matches_formula(self):
        series = gen_white_noise(64, seed=11)
        acf = autocorrelation(series)
        for i in range(1, 64):
            expected = math.sqrt((1 + 2 * sum(r**2 for r in acf.r[1:i])) / 64)
            assert acf.se_bartlett[i] == pytest.approx(expected, rel=1e-12)

    @settings(max_examples=40)
    @given(st.lists(st.floats(-100, 100), min_size=3, max_size=128))
    def test_fft_and_direct_paths_agree(self, series):
        if np.var(series) <= 1e-12:
            return
        a = autocorrelation(series, method="fft")
        b = autocorrelation(series, method="direct")
        assert np.allclose(a.r, b.r, atol=1e-9)

    @settings(max_examples=30)
    @given(
        st.lists(st.floats(-10, 10), min_size=4, max_size=64),
        st.floats(0.1, 50),
        st.floats(-100, 100),
    )
    def test_shift_and_scale_invariance(self, series, alpha, beta):
        if np.var(series) <= 1e-9:
            return
        base = autocorrelation(series)
        moved = autocorrelation([alpha * v + beta for v in series])
        assert np.allclose(base.r, moved.r, atol=1e-8)

    @given(st.lists(st.floats(-100, 100), min_size=3, max_size=200))
    def test_r_bounded(self, series):
        if np.var(series) <= 1e-12:
            return
        acf = autocorrelation(series)
        assert all(abs(r) <= 1 + 1e-9 for r in acf.r)


class TestPeriodogram:
    def test_pure_cosine_peak(self):
        T, period = 600, 50
        series = [math.cos(2 * math.pi * t / period) for t in range(T)]
        spec = periodogram(series)
        peak = int(np.argmax(spec.power))
        assert spec.freqs[peak] == pytest.approx(0.02)
        others = [p for k, p in enumerate(spec.power) if k != peak]
        assert spec.power[peak] >= 100 * max(others)

    def test_constant_series_zero_power(self):
        spec = periodogram([4.0] * 16)
        assert max(spec.power) == pytest.approx(0.0, abs=1e-20)

    def test_dc_bin_zero_after_mean_removal(self):
        spec = periodogram(gen_white_noise(64, seed=5))
        assert spec.power[0] == pytest.approx(0.0, abs=1e-12)

    def test_one_sided_length(self):
        spec = periodogram(gen_white_noise(101, seed=2))
        assert len(spec.power) == 101 // 2 + 1

    def test_too_short(self):
        with pytest.raises(DegenerateInputError):
            periodogram([1.0, 2.0, 3.0])

    @settings(max_examples=40)
    @given(st.lists(st.floats(-50, 50), min_size=4, max_size=200))
    def test_parseval(self, series):
        y = np.asarray(series)
        if np.var(y) == 0:
            return
        T = len(y)
        d = y - y.mean()
        two_sided = np.sum(np.abs(np.fft.fft(d)) ** 2) / T
        c0 = autocovariance(series, 0)
        assert two_sided == pytest.approx(T * c0, rel=1e-8, abs=1e-8)

    def test_white_noise_no_dominant_bin(self):
        hits = 0
        for seed in range(100):
            spec = periodogram(gen_white_noise(256, seed=seed))
            power = np.asarray(spec.power[1:])
            if power.max() <= 10 * power.mean():
                hits += 1
        assert hits >= 95


class TestWhitenessCheck:
    def test_delta_acf_passes(self):
        acf = autocorrelation([0.0] * 50 + [1.0] + [0.0] * 50)
        # engineered series isn't white; build the trivial case directly instead
        from warstats.timefreq import AcfResult

        T = 101
        r = (1.0,) + (0.0,) * (T - 1)
        flat = AcfResult(r, (math.sqrt(1 / T),) * T, math.sqrt(1 / T), T)
        fraction, verdict = whiteness_check(flat)
        assert fraction == 1.0 and verdict

    def test_cosine_fails(self):
        series = [math.cos(2 * math.pi * t / 50) for t in range(600)]
        fraction, verdict = whiteness_check(autocorrelation(series))
        assert not verdict

    def test_white_noise_median_fraction(self):
        fractions = sorted(
            whiteness_check(autocorrelation(gen_white_noise(601, seed=s)))[0] for s in range(100)
        )
        median = (fractions[49] + fractions[50]) / 2
        assert median >= 0.90

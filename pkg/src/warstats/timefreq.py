"""Autocorrelation and spectral analysis.

The autocovariance uses the biased 1/T estimator at every lag, so the ACF at
large lags shrinks toward zero by construction. Two error bands are reported:
the flat white-noise band sqrt(1/T), and the growing Bartlett band
sqrt((1/T)(1 + 2*sum_{k<i} r_k^2)). The periodogram is |DFT|^2 / T, one-sided,
mean-removed, rectangular window.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DegenerateInputError


@dataclass(frozen=True)
class AcfResult:
    r: tuple[float, ...]
    se_bartlett: tuple[float, ...]
    se_white: float
    T: int

    @property
    def lags(self) -> range:
        return range(self.T)


@dataclass(frozen=True)
class Spectrum:
    freqs: tuple[float, ...]  # cycles per year
    power: tuple[float, ...]
    T: int


def autocovariance(series: Sequence[float], lag: int) -> float:
    """Biased lagged covariance: (1/T) * sum (y_t - mean)(y_{t+lag} - mean).

    Note the 1/T factor regardless of lag; lag 0 gives the sample variance.
    """
    y = np.asarray(series, dtype=float)
    T = len(y)
    if T < 2:
        raise DegenerateInputError("series too short")
    if not (0 <= lag <= T - 1):
        raise ValueError(f"lag {lag} out of range [0, {T - 1}]")
    d = y - y.mean()
    return float(np.dot(d[: T - lag], d[lag:]) / T)


def _acv_direct(y: np.ndarray) -> np.ndarray:
    T = len(y)
    d = y - y.mean()
    return np.array([np.dot(d[: T - i], d[i:]) for i in range(T)]) / T


def _acv_fft(y: np.ndarray) -> np.ndarray:
    # full linear autocorrelation via zero-padded FFT; same 1/T normalization
    T = len(y)
    d = y - y.mean()
    nfft = 1
    while nfft < 2 * T:
        nfft *= 2
    F = np.fft.rfft(d, nfft)
    acv = np.fft.irfft(F * np.conj(F), nfft)[:T]
    return acv / T


def autocorrelation(series: Sequence[float], method: str = "fft") -> AcfResult:
    """ACF at lags 0..T-1 with white-noise and Bartlett error bands.

    method="direct" is the O(T^2) reference path; "fft" computes the same
    values in O(T log T). Both agree to 1e-9.
    """
    y = np.asarray(series, dtype=float)
    T = len(y)
    if T < 2:
        raise DegenerateInputError("series too short")
    if method == "direct":
        acv = _acv_direct(y)
    elif method == "fft":
        acv = _acv_fft(y)
    else:
        raise ValueError(f"unknown method {method!r}")
    c0 = acv[0]
    if c0 <= 0:
        raise DegenerateInputError("zero-variance series")
    r = acv / c0
    r[0] = 1.0
    se_white = math.sqrt(1.0 / T)
    # Bartlett band at lag i assumes the true ACF vanishes beyond q = i-1
    cum = np.concatenate([[0.0], np.cumsum(r[1:] ** 2)])
    se_bartlett = np.sqrt((1.0 + 2.0 * np.concatenate([[0.0], cum[:-1]])) / T)
    se_bartlett[0] = se_white
    return AcfResult(tuple(r.tolist()), tuple(se_bartlett.tolist()), se_white, T)


def periodogram(series: Sequence[float]) -> Spectrum:
    """One-sided power spectrum |DFT_k|^2 / T after mean removal.

    freqs[k] = k/T cycles per year; no taper, no zero-padding. The two-sided
    sum equals T times the series variance (Parseval).
    """
    y = np.asarray(series, dtype=float)
    T = len(y)
    if T < 4:
        raise DegenerateInputError("need at least 4 points")
    d = y - y.mean()
    F = np.fft.rfft(d)
    power = np.abs(F) ** 2 / T
    freqs = np.arange(len(F)) / T
    return Spectrum(tuple(freqs.tolist()), tuple(power.tolist()), T)


def whiteness_check(acf: AcfResult, confidence_multiplier: float = 1.96) -> tuple[float, bool]:
    """Fraction of lags 1..T-1 inside the +/- multiplier*sqrt(1/T) band.

    Verdict is True when at least 95% of lags stay inside, the operational
    reading of "no detectable autocorrelation".
    """
    band = confidence_multiplier * acf.se_white
    inside = sum(1 for ri in acf.r[1:] if abs(ri) <= band)
    fraction = inside / (acf.T - 1)
    return fraction, fraction >= 0.95

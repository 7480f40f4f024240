"""Seeded synthetic-data generators with known ground truth.

The random stream comes from a hand-rolled xorshift64* recurrence (state is
64-bit; x ^= x >> 12; x ^= x << 25; x ^= x >> 27; output x * 2685821657736338717),
so every run of the same seed reproduces the identical sample sequence without
depending on any platform generator. Uniforms lie in (0, 1]; normals come from
the Box-Muller transform.
"""

from __future__ import annotations

import math

_MASK64 = (1 << 64) - 1
_MULT = 2685821657736338717


class Xorshift64Star:
    """Minimal deterministic PRNG; one instance per consumer, not shared."""

    def __init__(self, seed: int):
        self._state = (seed & _MASK64) or 0x9E3779B97F4A7C15

    def next_u64(self) -> int:
        x = self._state
        x ^= (x >> 12)
        x ^= (x << 25) & _MASK64
        x ^= (x >> 27)
        self._state = x
        return (x * _MULT) & _MASK64

    def uniform(self) -> float:
        # 53-bit mantissa, shifted into (0, 1]
        return ((self.next_u64() >> 11) + 1) * (2.0**-53)

    def normal(self) -> float:
        u1 = self.uniform()
        u2 = self.uniform()
        return math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)


def gen_power_law(n: int, exponent: float, x_min: float, seed: int) -> list[float]:
    """Inverse-transform samples from density ~ x**exponent on [x_min, inf).

    Requires exponent < -1 so the density normalizes. The implied CCDF decays
    with exponent (exponent + 1).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if exponent >= -1:
        raise ValueError("density exponent must be < -1")
    if x_min <= 0:
        raise ValueError("x_min must be positive")
    rng = Xorshift64Star(seed)
    return [x_min * rng.uniform() ** (1.0 / (exponent + 1.0)) for _ in range(n)]


def gen_lognormal(n: int, mu: float, sigma: float, seed: int) -> list[float]:
    """exp of Gaussian(mu, sigma) via Box-Muller."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    rng = Xorshift64Star(seed)
    return [math.exp(mu + sigma * rng.normal()) for _ in range(n)]


def gen_white_noise(T: int, seed: int) -> list[float]:
    """i.i.d. standard normal series of length T."""
    if T < 4:
        raise ValueError("T must be >= 4")
    rng = Xorshift64Star(seed)
    return [rng.normal() for _ in range(T)]


def gen_sinusoid(T: int, period: float, amplitude: float, noise_sd: float, seed: int) -> list[float]:
    """amplitude * cos(2*pi*t / period) + Gaussian noise, t = 0..T-1."""
    if T < 4:
        raise ValueError("T must be >= 4")
    if period < 2:
        raise ValueError("period must be >= 2")
    rng = Xorshift64Star(seed)
    out = []
    for t in range(T):
        noise = noise_sd * rng.normal() if noise_sd > 0 else 0.0
        out.append(amplitude * math.cos(2.0 * math.pi * t / period) + noise)
    return out

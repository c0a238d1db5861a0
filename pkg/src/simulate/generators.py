"""
generators.py
─────────────
Seeded signal generators.

Random draws come from numpy's ``Generator`` on the ``PCG64`` bit generator,
seeded with a 64-bit unsigned integer; Gaussian samples use numpy's
``standard_normal`` (ziggurat method) scaled by σ.  A fixed seed gives the same
series on every run and platform for a given numpy release.
"""

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from ekz.timeseries import TimeSeries
from utils.errors import DomainError

MAX_SEED = 2 ** 64 - 1


@dataclass(frozen=True)
class WhiteNoise:
    sigma: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.sigma) and self.sigma > 0):
            raise DomainError(f"noise standard deviation must be > 0 (got {self.sigma})")


@dataclass(frozen=True)
class Sinusoid:
    period: float
    amplitude: float = 1.0
    phase: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.period) and self.period > 1):
            raise DomainError(f"sinusoid period must be > 1 sample (got {self.period})")
        if not (math.isfinite(self.amplitude) and math.isfinite(self.phase)):
            raise DomainError("sinusoid amplitude and phase must be finite")


Component = Union[WhiteNoise, Sinusoid]


def _check_length(n) -> int:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise DomainError(f"series length must be a positive integer (got {n!r})")
    return int(n)


def check_seed(seed) -> int:
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)) or not 0 <= seed <= MAX_SEED:
        raise DomainError(f"seed must be a 64-bit unsigned integer (got {seed!r})")
    return int(seed)


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(check_seed(seed)))


def gen_white_noise(n: int, sigma: float, seed: int) -> TimeSeries:
    """n independent N(0, σ²) draws."""
    n = _check_length(n)
    noise = WhiteNoise(float(sigma))
    values = make_rng(seed).standard_normal(n) * noise.sigma
    return TimeSeries.from_values(values, label="white_noise")


def gen_sinusoid(n: int, period: float, amplitude: float = 1.0, phase: float = 0.0) -> TimeSeries:
    """x_t = amplitude · sin(2πt/period + phase), t = 0..n-1."""
    n = _check_length(n)
    wave = Sinusoid(float(period), float(amplitude), float(phase))
    t = np.arange(n, dtype=np.float64)
    values = wave.amplitude * np.sin(2.0 * np.pi * t / wave.period + wave.phase)
    return TimeSeries.from_values(values, label="sinusoid")

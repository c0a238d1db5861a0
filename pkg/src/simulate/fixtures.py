"""
Synthetic stand-ins for the two real-data workflows.

  • six-hourly: 1,460 samples (four a day for 365 days) of a surface-pressure
    like series with a daily cycle, i.e. a period of 4 samples;
  • daily: 21,915 samples (60 years of 365.25 days) of a precipitation-rate
    like series with a seasonal cycle of 365.256363004 days.

Both sit on a plain uniform grid; there is no leap-day handling.
"""

from typing import List, Tuple

import numpy as np
import pandas as pd

from ekz.timeseries import TimeSeries
from simulate.generators import gen_sinusoid, gen_white_noise

SIX_HOURLY_LENGTH = 1460
DAILY_LENGTH = 21915
SIDEREAL_YEAR_DAYS = 365.256363004


def six_hourly_fixture(seed: int = 1, noise_sigma: float = 1.5, n: int = SIX_HOURLY_LENGTH,
                       level: float = 1013.25, daily_amplitude: float = 5.0) -> Tuple[np.ndarray, TimeSeries]:
    """Returns ``(hours, series)``; hours run 0, 6, 12, ..."""
    values = level + gen_sinusoid(n, 4.0, daily_amplitude).values
    if noise_sigma > 0:
        values = values + gen_white_noise(n, noise_sigma, seed).values
    hours = np.arange(n, dtype=np.float64) * 6.0
    return hours, TimeSeries.from_values(values, time_step=6.0, label="pressure")


def daily_fixture(seed: int = 1, noise_sigma: float = 0.5, n: int = DAILY_LENGTH,
                  level: float = 3.0, seasonal_amplitude: float = 1.5) -> Tuple[np.ndarray, TimeSeries]:
    """Returns ``(days, series)``; days run 0, 1, 2, ..."""
    values = level + gen_sinusoid(n, SIDEREAL_YEAR_DAYS, seasonal_amplitude).values
    if noise_sigma > 0:
        values = values + gen_white_noise(n, noise_sigma, seed).values
    days = np.arange(n, dtype=np.float64)
    return days, TimeSeries.from_values(values, time_step=1.0, label="precipitation")


def iso_timestamps(n: int, step_hours: float, start: str = "2019-01-01T00:00:00") -> List[str]:
    """``n`` ISO-8601 stamps ``step_hours`` apart, for the time column of a fixture file."""
    stamps = pd.Timestamp(start) + pd.to_timedelta(np.arange(n) * step_hours, unit="h")
    return [s.strftime("%Y-%m-%dT%H:%M:%S") for s in stamps]

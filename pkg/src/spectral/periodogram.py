from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import fft

from config.config_manager import ConfigManager
from ekz.timeseries import TimeSeries
from utils.errors import DataError, DomainError


@dataclass(frozen=True, eq=False)
class Periodogram:
    """One-sided sample spectrum I(j/n) = (1/n)|Σ_t x_t e^{-2πi(j/n)t}|², j = 0..⌊n/2⌋.

    The mean is not removed, so the j = 0 bin carries n·mean².  ``scale`` is
    ``"log"`` for natural-log power.
    """

    frequencies: np.ndarray
    power: np.ndarray
    n: int
    scale: str = "linear"

    normalization = "1/n"

    def two_sided_total(self) -> float:
        """Sum of I over all n Fourier frequencies; equals Σ x_t² (Parseval)."""
        if self.scale != "linear":
            raise DomainError("two-sided totals need linear power")
        total = self.power[0] + 2.0 * np.sum(self.power[1:])
        if self.n % 2 == 0:
            total -= self.power[-1]     # the Nyquist bin appears once
        return float(total)

    def band_mean(self, low: float, high: float) -> float:
        """Mean power over bins with low <= λ <= high."""
        band = (self.frequencies >= low) & (self.frequencies <= high)
        if not band.any():
            raise DomainError(f"no Fourier frequency in [{low}, {high}] for n = {self.n}")
        return float(np.mean(self.power[band]))


def periodogram(x: TimeSeries) -> Periodogram:
    """Raw periodogram of a fully observed series via a real FFT."""
    if x.n_missing:
        raise DataError(
            f"series has {x.n_missing} missing value(s); trim or fill them before computing a periodogram"
        )
    n = len(x)
    if n < 2:
        raise DomainError(f"a periodogram needs at least 2 samples (got {n})")

    spectrum = fft.rfft(x.values)
    power = (spectrum.real ** 2 + spectrum.imag ** 2) / n
    frequencies = np.arange(power.size, dtype=np.float64) / n
    return Periodogram(frequencies, power, n)


def log_power(pg: Periodogram, floor: Optional[float] = None) -> Periodogram:
    """ln(max(power, floor)) per bin."""
    if floor is None:
        floor = ConfigManager().get_log_floor()
    if not floor > 0:
        raise DomainError(f"log floor must be positive (got {floor})")
    if pg.scale == "log":
        return pg
    return Periodogram(pg.frequencies, np.log(np.maximum(pg.power, floor)), pg.n, scale="log")


def log_periodogram(x: TimeSeries, floor: Optional[float] = None) -> Periodogram:
    """Natural-log periodogram; bins below *floor* (default 1e-300) read ln(floor)."""
    return log_power(periodogram(x), floor)

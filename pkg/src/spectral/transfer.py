"""
transfer.py
───────────
Energy transfer functions |B(λ)|² of EKZ filters and the half-power cutoff.

Two curves are available for a ``FilterSpec``:

  • closed form   (sin(π m_r λ) / (m_r sin(π λ)))^(2k) - exact for odd integer
                  m_r, an approximation otherwise;
  • exact         the squared frequency response of the normalized taps,
                  [Σ_u a_u/m_r^k · cos(2π λ u)]², real because the taps are
                  symmetric.

Frequencies are in cycles per sample on [0, 0.5].
"""

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Iterable, Optional, Union

import numpy as np

from config.config_manager import ConfigManager
from ekz.window import (
    CoefficientWindow,
    FilterSpec,
    ekz_coefficients,
    validate_iterations,
    validate_window_length,
)
from utils.errors import DomainError

# Below this frequency the closed form uses its DC limit of 1.
_DC_EPSILON = 1e-12

# Cap on cosine-table elements evaluated at once in etf_exact.
_CHUNK_ELEMENTS = 4_000_000


class TransferKind(Enum):
    CLOSED_FORM = "closed-form"
    EXACT = "exact"


@dataclass(frozen=True, eq=False)
class TransferCurve:
    frequencies: np.ndarray
    values: np.ndarray
    kind: TransferKind
    spec: FilterSpec
    scale: str = "linear"

    def column_name(self) -> str:
        name = f"{self.spec.label()}_{self.kind.value}"
        return f"log_{name}" if self.scale == "log" else name

    def value_at(self, frequency: float) -> float:
        idx = int(np.argmin(np.abs(self.frequencies - frequency)))
        return float(self.values[idx])


def _check_frequencies(lam) -> np.ndarray:
    arr = np.asarray(lam, dtype=np.float64)
    if not np.all(np.isfinite(arr)) or np.any(arr < 0) or np.any(arr > 0.5):
        raise DomainError("frequencies must lie in [0, 0.5] cycles per sample")
    return arr


def frequency_grid(points: Optional[int] = None, extra: Iterable[float] = ()) -> np.ndarray:
    """Evenly spaced grid on [0, 0.5] plus any *extra* frequencies, sorted."""
    if points is None:
        points = ConfigManager().get_etf_grid_points()
    if points < 2:
        raise DomainError(f"a frequency grid needs at least 2 points (got {points})")
    grid = np.linspace(0.0, 0.5, int(points))
    extra = _check_frequencies(list(extra)).reshape(-1)
    if extra.size:
        grid = np.unique(np.concatenate((grid, extra)))
    return grid


def etf_closed_form(m_r: float, k: int, lam: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    """(sin(π m_r λ) / (m_r sin(π λ)))^(2k), equal to 1 at λ = 0."""
    m_r = validate_window_length(m_r)
    k = validate_iterations(k)
    arr = _check_frequencies(lam)

    flat = np.atleast_1d(arr).astype(np.float64)
    ratio = np.ones_like(flat)
    away = flat >= _DC_EPSILON
    ratio[away] = np.sin(np.pi * m_r * flat[away]) / (m_r * np.sin(np.pi * flat[away]))
    values = ratio ** (2 * k)

    if arr.ndim == 0:
        return float(values[0])
    return values.reshape(arr.shape)


def _frequency_response(window: CoefficientWindow, lam: np.ndarray) -> np.ndarray:
    """B(λ) = Σ_u (a_u / m_r^k) cos(2π λ u), folded over the symmetric taps."""
    taps = window.normalized()
    h = window.half_width
    centre = taps[h]
    side = taps[h + 1:]                      # a_1 .. a_H
    u = np.arange(1, h + 1, dtype=np.float64)

    response = np.full(lam.size, centre)
    if h == 0:
        return response
    step = max(1, _CHUNK_ELEMENTS // h)
    for start in range(0, lam.size, step):
        block = lam[start:start + step]
        cosines = np.cos(2.0 * np.pi * np.outer(block, u))
        response[start:start + step] += 2.0 * (cosines @ side)
    return response


def etf_exact(coeffs: CoefficientWindow, grid: Optional[np.ndarray] = None) -> TransferCurve:
    """Squared frequency response of the normalized coefficient window."""
    lam = frequency_grid() if grid is None else _check_frequencies(grid).reshape(-1)
    response = _frequency_response(coeffs, lam)
    return TransferCurve(lam, response * response, TransferKind.EXACT, FilterSpec(coeffs.m_r, coeffs.k))


def exact_curve(spec: FilterSpec, grid: Optional[np.ndarray] = None) -> TransferCurve:
    curve = etf_exact(ekz_coefficients(spec.m_r, spec.k), grid)
    return replace(curve, spec=spec)


def closed_form_curve(spec: FilterSpec, grid: Optional[np.ndarray] = None) -> TransferCurve:
    lam = frequency_grid() if grid is None else _check_frequencies(grid).reshape(-1)
    values = np.asarray(etf_closed_form(spec.m_r, spec.k, lam), dtype=np.float64)
    return TransferCurve(lam, values, TransferKind.CLOSED_FORM, spec)


def log_transfer(curve: TransferCurve, floor: Optional[float] = None) -> TransferCurve:
    """Natural log of a curve, values clipped below at *floor*."""
    if floor is None:
        floor = ConfigManager().get_log_floor()
    if not floor > 0:
        raise DomainError(f"log floor must be positive (got {floor})")
    return TransferCurve(curve.frequencies, np.log(np.maximum(curve.values, floor)),
                         curve.kind, curve.spec, scale="log")


def cutoff_half_power(m_r: float, k: int) -> float:
    """Approximate half-power frequency λ₀ of EKZ_{m_r,k}.

    λ₀ = (√6/π) · √[(1 − 2^(−1/(2k))) / (m_r² − 2^(−1/(2k)))]
    """
    m_r = validate_window_length(m_r)
    k = validate_iterations(k)
    if m_r == 1:
        raise DomainError("the identity filter (m_r = 1) has no half-power point")
    half_root = 0.5 ** (1.0 / (2 * k))
    return (math.sqrt(6.0) / math.pi) * math.sqrt((1.0 - half_root) / (m_r * m_r - half_root))

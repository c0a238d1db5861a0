"""
window.py
─────────
Window-length decomposition and coefficient generation for SMA / KZ / EKZ
filters.

A real window length m_r >= 1 is split into m_o, the greatest odd integer not
above m_r, and the remainder m_d = m_r - m_o in [0, 2).  The single-pass
window is

    {m_d/2, 1, 1, ..., 1, m_d/2}        (m_o ones)

and the k-pass window is its k-fold discrete self-convolution, whose taps
sum to m_r**k.  When m_d == 0 the zero end taps are dropped, so the window is
exactly the classic KZ window (1 + z + ... + z^(m-1))^k.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple

import numpy as np
from scipy import signal

from config.config_manager import ConfigManager
from utils.errors import DomainError, ResourceError

logger = logging.getLogger(__name__)


class BoundaryPolicy(Enum):
    """What to emit where the full window does not fit over observed data."""

    MISSING = "missing"
    RENORMALIZE = "renorm"

    @classmethod
    def from_name(cls, name: str) -> "BoundaryPolicy":
        key = (name or "").strip().lower()
        if key in ("missing", "na"):
            return cls.MISSING
        if key in ("renorm", "renormalize", "renormalise"):
            return cls.RENORMALIZE
        raise DomainError(f"unknown boundary policy '{name}' (use 'missing' or 'renorm')")


def decompose_window_length(m_r: float) -> Tuple[int, float]:
    """Split m_r into ``(m_o, m_d)``: greatest odd integer <= m_r and remainder.

    >>> decompose_window_length(1.5)
    (1, 0.5)
    >>> decompose_window_length(7)
    (7, 0.0)
    """
    m_r = validate_window_length(m_r)
    floor = math.floor(m_r)
    m_o = floor if floor % 2 == 1 else floor - 1
    m_d = m_r - m_o
    return int(m_o), float(m_d)


def validate_window_length(m_r) -> float:
    try:
        value = float(m_r)
    except (TypeError, ValueError):
        raise DomainError(f"window length must be a real number (got {m_r!r})")
    if not math.isfinite(value) or value < 1:
        raise DomainError(f"window length m_r must be finite and >= 1 (got {m_r})")
    return value


def validate_iterations(k) -> int:
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or k < 1:
        raise DomainError(f"iteration count k must be a positive integer (got {k!r})")
    return int(k)


@dataclass(frozen=True)
class FilterSpec:
    """An EKZ filter: window length ``m_r``, ``k`` passes and a boundary policy."""

    m_r: float
    k: int = 1
    boundary: BoundaryPolicy = BoundaryPolicy.MISSING
    m_o: int = field(init=False)
    m_d: float = field(init=False)

    def __post_init__(self):
        m_r = validate_window_length(self.m_r)
        k = validate_iterations(self.k)
        if not isinstance(self.boundary, BoundaryPolicy):
            raise DomainError(f"boundary must be a BoundaryPolicy (got {self.boundary!r})")
        m_o, m_d = decompose_window_length(m_r)
        object.__setattr__(self, "m_r", m_r)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "m_o", m_o)
        object.__setattr__(self, "m_d", m_d)

    @property
    def is_kz(self) -> bool:
        """True when m_r is an odd integer (the classic KZ filter)."""
        return self.m_d == 0

    @property
    def pass_half_width(self) -> int:
        """Half-width of one pass of the window."""
        return (self.m_o + 1) // 2 if self.m_d > 0 else (self.m_o - 1) // 2

    @property
    def half_width(self) -> int:
        """Half-width H of the k-pass window."""
        return self.k * self.pass_half_width

    def label(self) -> str:
        prefix = "kz" if self.is_kz else "ekz"
        return f"{prefix}_m{format(self.m_r, '.12g')}_k{self.k}"

    def with_k(self, k: int) -> "FilterSpec":
        return FilterSpec(self.m_r, k, self.boundary)


@dataclass(frozen=True, eq=False)
class CoefficientWindow:
    """Symmetric taps a_u for u in [-H, H] with normalizer m_r**k."""

    weights: np.ndarray
    half_width: int
    normalizer: float
    k: int
    m_r: float

    @property
    def offsets(self) -> np.ndarray:
        return np.arange(-self.half_width, self.half_width + 1)

    def normalized(self) -> np.ndarray:
        """Taps divided by m_r**k; they sum to one."""
        return self.weights / self.normalizer

    def weight_at(self, u: int) -> float:
        if abs(u) > self.half_width:
            return 0.0
        return float(self.weights[u + self.half_width])

    def __len__(self) -> int:
        return int(self.weights.size)


# ── Convolution helpers ────────────────────────────────────────────────────

def convolve_full(a: np.ndarray, b: np.ndarray, direct_limit: Optional[int] = None) -> np.ndarray:
    """Full linear convolution; direct summation unless the work is large.

    Above ``direct_limit`` (product of lengths) the FFT method is used.
    """
    if direct_limit is None:
        direct_limit = ConfigManager().get_direct_convolution_limit()
    if a.size * b.size <= direct_limit:
        return np.convolve(a, b)
    logger.debug("FFT convolution for %d x %d taps", a.size, b.size)
    return signal.fftconvolve(a, b)


def _mirror(weights: np.ndarray) -> np.ndarray:
    """Rebuild an odd-length sequence from its left half so it is exactly symmetric."""
    half = weights.size // 2
    left = weights[:half]
    return np.concatenate((left, weights[half:half + 1], left[::-1]))


def base_window(m_r: float) -> np.ndarray:
    """Single-pass taps {m_d/2, 1, ..., 1, m_d/2}; zero end taps dropped."""
    m_o, m_d = decompose_window_length(m_r)
    ones = np.ones(m_o, dtype=np.float64)
    if m_d == 0:
        return ones
    end = np.array([m_d / 2.0])
    return np.concatenate((end, ones, end))


def ekz_coefficients(m_r: float, k: int, max_support_width: Optional[int] = None) -> CoefficientWindow:
    """Coefficients of (m_d/2 + z + ... + z^m_o + (m_d/2) z^(m_o+1))^k, centred.

    Built by k-1 successive convolutions of the single-pass window with
    itself.  Raises ``ResourceError`` when k*(m_o+1) exceeds the configured
    maximum support width.
    """
    m_r = validate_window_length(m_r)
    k = validate_iterations(k)
    m_o, m_d = decompose_window_length(m_r)

    if max_support_width is None:
        max_support_width = ConfigManager().get_max_support_width()
    if k * (m_o + 1) > max_support_width:
        raise ResourceError(
            f"window support k*(m_o+1) = {k * (m_o + 1)} exceeds the maximum of {max_support_width} taps"
        )
    if k * math.log10(m_r) > 300:
        raise ResourceError(f"normalizer m_r**k = {m_r}**{k} overflows double precision")

    base = base_window(m_r)
    weights = base
    for _ in range(k - 1):
        weights = convolve_full(weights, base)
        np.maximum(weights, 0.0, out=weights)   # FFT round-off can go slightly negative
        weights = _mirror(weights)

    half_width = (weights.size - 1) // 2
    return CoefficientWindow(
        weights=weights,
        half_width=half_width,
        normalizer=m_r ** k,
        k=k,
        m_r=m_r,
    )

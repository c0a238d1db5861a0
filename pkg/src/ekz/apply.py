"""
apply.py
────────
Application of SMA / KZ / EKZ filters to a ``TimeSeries``.

Direct form convolves once with the k-pass window; iterated form runs the
single-pass window k times.  Both keep the input length and honour the
filter's ``BoundaryPolicy``:

  • MISSING      - output is missing wherever the window leaves the series
                   or touches a missing sample.
  • RENORMALIZE  - output is the weighted mean of the observed in-range taps,
                   divided by the sum of the weights actually applied.
"""

import logging
from typing import List

import numpy as np

from ekz.timeseries import TimeSeries
from ekz.window import (
    BoundaryPolicy,
    CoefficientWindow,
    FilterSpec,
    convolve_full,
    ekz_coefficients,
)
from utils.errors import DomainError

logger = logging.getLogger(__name__)


def _window_counts(mask: np.ndarray, half_width: int) -> np.ndarray:
    """Number of True entries of *mask* within [t-H, t+H] clipped to the series."""
    n = mask.size
    cumulative = np.concatenate(([0], np.cumsum(mask, dtype=np.int64)))
    idx = np.arange(n)
    lo = np.clip(idx - half_width, 0, n)
    hi = np.clip(idx + half_width + 1, 0, n)
    return cumulative[hi] - cumulative[lo]


def _apply_window(values: np.ndarray, missing: np.ndarray, window: CoefficientWindow,
                  policy: BoundaryPolicy) -> np.ndarray:
    """One convolution of the samples with *window*; NaN marks missing output."""
    n = values.size
    h = window.half_width
    filled = np.where(missing, 0.0, values)
    weighted_sum = convolve_full(filled, window.weights)[h:h + n]
    out = np.full(n, np.nan)

    if policy is BoundaryPolicy.MISSING:
        idx = np.arange(n)
        inside = (idx >= h) & (idx < n - h)
        valid = inside & (_window_counts(missing, h) == 0)
        out[valid] = weighted_sum[valid] / window.normalizer
    else:
        observed = (~missing).astype(np.float64)
        applied = convolve_full(observed, window.weights)[h:h + n]
        valid = _window_counts(~missing, h) > 0
        out[valid] = weighted_sum[valid] / applied[valid]

    return out


def apply_direct(x: TimeSeries, spec: FilterSpec) -> TimeSeries:
    """EKZ_{m_r,k} in direct form: one pass with the k-fold window."""
    window = ekz_coefficients(spec.m_r, spec.k)
    out = _apply_window(x.values, x.missing, window, spec.boundary)
    logger.debug("Applied %s directly (%d taps) to %d samples", spec.label(), len(window), len(x))
    return x.with_values(out, label=spec.label())


def apply_iterated(x: TimeSeries, spec: FilterSpec) -> TimeSeries:
    """EKZ_{m_r,k} in iterated form: k passes of the single-pass window."""
    window = ekz_coefficients(spec.m_r, 1)
    values, missing = x.values, x.missing
    for _ in range(spec.k):
        values = _apply_window(values, missing, window, spec.boundary)
        missing = np.isnan(values)
    logger.debug("Applied %s iteratively to %d samples", spec.label(), len(x))
    return x.with_values(values, missing, label=spec.label())


def apply_filter(x: TimeSeries, spec: FilterSpec, iterated: bool = False) -> TimeSeries:
    return apply_iterated(x, spec) if iterated else apply_direct(x, spec)


def esma(x: TimeSeries, m_r: float, policy: BoundaryPolicy = BoundaryPolicy.MISSING) -> TimeSeries:
    """Extended simple moving average: EKZ with a single pass."""
    return apply_direct(x, FilterSpec(m_r, 1, policy))


def kz(x: TimeSeries, m: int, k: int, policy: BoundaryPolicy = BoundaryPolicy.MISSING) -> TimeSeries:
    """Classic KZ_{m,k}; m must be an odd positive integer."""
    if isinstance(m, bool) or int(m) != m or int(m) % 2 == 0 or m < 1:
        raise DomainError(f"KZ window must be an odd positive integer (got {m})")
    return apply_direct(x, FilterSpec(int(m), k, policy))


def residual(x: TimeSeries, spec: FilterSpec, iterated: bool = False) -> TimeSeries:
    """Difference filter x - EKZ(x): keeps what the low-pass filter removes."""
    smooth = apply_filter(x, spec, iterated=iterated)
    missing = x.missing | smooth.missing
    values = np.where(missing, np.nan, x.values - smooth.values)
    return x.with_values(values, missing, label=f"residual_{spec.label()}")


def neighbouring_kz(spec: FilterSpec) -> List[FilterSpec]:
    """KZ filters whose odd windows bracket ``spec.m_r`` (same k and policy)."""
    if spec.is_kz:
        candidates = [int(spec.m_r) - 2, int(spec.m_r) + 2]
    else:
        candidates = [spec.m_o, spec.m_o + 2]
    return [FilterSpec(m, spec.k, spec.boundary) for m in candidates if m >= 1]

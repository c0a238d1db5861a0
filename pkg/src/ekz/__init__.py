# EKZ filter core: window decomposition, coefficients and application
from ekz.timeseries import TimeSeries
from ekz.window import (
    BoundaryPolicy,
    CoefficientWindow,
    FilterSpec,
    decompose_window_length,
    ekz_coefficients,
)
from ekz.apply import apply_direct, apply_filter, apply_iterated, esma, kz, neighbouring_kz, residual

__all__ = [
    "TimeSeries",
    "BoundaryPolicy",
    "CoefficientWindow",
    "FilterSpec",
    "decompose_window_length",
    "ekz_coefficients",
    "apply_direct",
    "apply_filter",
    "apply_iterated",
    "esma",
    "kz",
    "neighbouring_kz",
    "residual",
]

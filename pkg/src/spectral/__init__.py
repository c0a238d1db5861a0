# Spectral characterisation: transfer functions, cutoff, periodograms
from spectral.periodogram import Periodogram, log_periodogram, log_power, periodogram
from spectral.transfer import (
    TransferCurve,
    TransferKind,
    closed_form_curve,
    cutoff_half_power,
    etf_closed_form,
    etf_exact,
    exact_curve,
    frequency_grid,
    log_transfer,
)

__all__ = [
    "Periodogram",
    "log_periodogram",
    "log_power",
    "periodogram",
    "TransferCurve",
    "TransferKind",
    "closed_form_curve",
    "cutoff_half_power",
    "etf_closed_form",
    "etf_exact",
    "exact_curve",
    "frequency_grid",
    "log_transfer",
]

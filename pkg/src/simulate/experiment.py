"""
experiment.py
─────────────
Runs a ``SimulationRecipe``: synthesize the series, apply each filter to the
raw series, and collect periodograms and transfer curves as plot-ready
tables.

Filtered periodograms share one segment: the narrowest fully observed interior
of the recipe's filters under the MISSING policy, never zero-filled edges.  On
that segment the truncation edge terms are removed by filtering the raw
segment as one period of a periodic series, so at every Fourier frequency the
filtered power is the exact transfer function times the raw segment power.
The raw segment periodogram is kept in the report for that comparison.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from ekz.apply import apply_direct
from ekz.timeseries import TimeSeries
from ekz.window import FilterSpec
from simulate.generators import MAX_SEED, Sinusoid, WhiteNoise, gen_sinusoid, gen_white_noise
from simulate.recipe import SimulationRecipe
from spectral.periodogram import Periodogram, log_power, periodogram
from spectral.transfer import (
    TransferCurve,
    TransferKind,
    closed_form_curve,
    cutoff_half_power,
    exact_curve,
    frequency_grid,
)
from utils.errors import DataError

logger = logging.getLogger(__name__)

Table = Dict[str, np.ndarray]


@dataclass(frozen=True, eq=False)
class FilteredResult:
    spec: FilterSpec
    series: TimeSeries
    interior: Tuple[int, int]
    periodogram: Periodogram
    log_periodogram: Periodogram


@dataclass(frozen=True, eq=False)
class ExperimentReport:
    recipe: SimulationRecipe
    raw: TimeSeries
    raw_periodogram: Periodogram
    raw_log_periodogram: Periodogram
    raw_interior_periodogram: Optional[Periodogram] = None
    filtered: Tuple[FilteredResult, ...] = ()
    curves: Tuple[TransferCurve, ...] = ()
    reference_curves: Tuple[TransferCurve, ...] = ()

    def tables(self) -> Dict[str, Table]:
        """Named column tables, one per plotted element group."""
        tables: Dict[str, Table] = {
            "periodogram_raw": _periodogram_table(self.raw_periodogram, self.raw_log_periodogram),
        }
        for result in self.filtered:
            tables[f"periodogram_{result.spec.label()}"] = _periodogram_table(
                result.periodogram, result.log_periodogram)
        every = self.curves + self.reference_curves
        if every:
            etf: Table = {"frequency": every[0].frequencies}
            for curve in self.curves:
                etf[curve.column_name()] = curve.values
            for curve in self.reference_curves:
                etf[f"reference_{curve.column_name()}"] = curve.values
            tables["etf"] = etf
        specs = [c.spec for c in self.curves if c.kind is TransferKind.EXACT]
        specs += [c.spec for c in self.reference_curves]
        specs = [s for s in specs if s.m_r > 1]
        if specs:
            tables["cutoff"] = {
                "m_r": np.array([s.m_r for s in specs]),
                "k": np.array([s.k for s in specs]),
                "cutoff": np.array([cutoff_half_power(s.m_r, s.k) for s in specs]),
            }
        return tables


def _periodogram_table(pg: Periodogram, log_pg: Periodogram) -> Table:
    return {"frequency": pg.frequencies, "power": pg.power, "log_power": log_pg.power}


def synthesize(recipe: SimulationRecipe) -> TimeSeries:
    """Sum of the recipe components.

    The first white-noise component draws from ``seed``; the i-th further one
    from ``seed + i`` (mod 2**64).
    """
    total = np.zeros(recipe.n)
    noise_index = 0
    for component in recipe.components:
        if isinstance(component, WhiteNoise):
            seed = (recipe.seed + noise_index) % (MAX_SEED + 1)
            total += gen_white_noise(recipe.n, component.sigma, seed).values
            noise_index += 1
        elif isinstance(component, Sinusoid):
            total += gen_sinusoid(recipe.n, component.period, component.amplitude, component.phase).values
    return TimeSeries.from_values(total, label=recipe.name)


def _segment(x: TimeSeries, start: int, stop: int) -> TimeSeries:
    return TimeSeries(x.values[start:stop], x.missing[start:stop], time_step=x.time_step,
                      origin=x.origin + start, label=x.label)


def _common_interior(filtered: List[TimeSeries], n: int) -> Tuple[int, int]:
    """Intersection of the filters' fully observed runs."""
    start, stop = 0, n
    for series in filtered:
        lo, hi = series.longest_observed_run()
        start, stop = max(start, lo), min(stop, hi)
    return start, max(start, stop)


def periodic_filter(segment: TimeSeries, spec: FilterSpec) -> TimeSeries:
    """*spec* applied to *segment* taken as one period of a periodic series.

    Agrees with the ordinary filter output except within the half-width of
    either end, where the samples beyond the segment are replaced by its
    wrapped-around samples.
    """
    h = spec.half_width
    n = len(segment)
    wrapped = np.arange(-h, n + h) % n
    padded = TimeSeries.from_values(segment.values[wrapped])
    out = apply_direct(padded, FilterSpec(spec.m_r, spec.k))
    return segment.with_values(out.values[h:h + n], label=spec.label())


def _measure(raw: TimeSeries, filtered: TimeSeries, spec: FilterSpec, bounds: Tuple[int, int],
             floor: Optional[float]) -> FilteredResult:
    observed = _segment(filtered, *bounds)
    corrected = periodic_filter(_segment(raw, *bounds), spec)
    edge = np.abs(corrected.values - observed.values)
    logger.debug("%s: edge terms up to %.3g removed on %d samples", spec.label(),
                 float(edge.max()), 2 * spec.half_width)
    pg = periodogram(corrected)
    return FilteredResult(spec, filtered, bounds, pg, log_power(pg, floor))


def run_experiment(recipe: SimulationRecipe, grid: Optional[np.ndarray] = None,
                   floor: Optional[float] = None) -> ExperimentReport:
    """Synthesize, filter and characterise one recipe."""
    raw = synthesize(recipe)
    raw_pg = periodogram(raw)
    logger.info("Recipe '%s': n=%d, seed=%d, %d filter(s)", recipe.name, recipe.n, recipe.seed,
                len(recipe.filters))

    outputs = [apply_direct(raw, spec) for spec in recipe.filters]
    bounds = _common_interior(outputs, len(raw))
    raw_interior_pg = None
    filtered: Tuple[FilteredResult, ...] = ()
    if recipe.filters:
        start, stop = bounds
        if stop - start < 2:
            widest = max(recipe.filters, key=lambda s: s.half_width)
            raise DataError(
                f"{widest.label()} leaves {stop - start} observed sample(s) of {len(raw)}; use a longer series"
            )
        raw_interior_pg = periodogram(_segment(raw, start, stop))
        filtered = tuple(_measure(raw, out, spec, bounds, floor) for spec, out in zip(recipe.filters, outputs))

    curves: List[TransferCurve] = []
    references: List[TransferCurve] = []
    if recipe.filters or recipe.references:
        lam = frequency_grid() if grid is None else grid
        for spec in recipe.filters:
            curves.append(exact_curve(spec, lam))
            curves.append(closed_form_curve(spec, lam))
        references = [exact_curve(spec, lam) for spec in recipe.references]

    return ExperimentReport(
        recipe=recipe,
        raw=raw,
        raw_periodogram=raw_pg,
        raw_log_periodogram=log_power(raw_pg, floor),
        raw_interior_periodogram=raw_interior_pg,
        filtered=filtered,
        curves=tuple(curves),
        reference_curves=tuple(references),
    )

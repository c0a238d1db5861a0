"""
commands.py
───────────
One function per subcommand.  Each takes the parsed ``argparse.Namespace``
and returns its result as named column tables (``{table: {column: values}}``)
for ``cli.output.emit_tables``; only ``config`` writes directly.
"""

import json
import logging
import sys
from itertools import product
from typing import Dict, List, Optional, Sequence

import numpy as np

from config.config_manager import ConfigManager
from ekz.apply import apply_filter, neighbouring_kz, residual
from ekz.window import BoundaryPolicy, FilterSpec, ekz_coefficients
from series_io.csv_reader import ColumnSpec, read_timeseries
from simulate.experiment import run_experiment
from simulate.fixtures import daily_fixture, iso_timestamps, six_hourly_fixture
from simulate.recipe import figure_recipe, load_recipe
from spectral.periodogram import log_power, periodogram
from spectral.transfer import (
    closed_form_curve,
    cutoff_half_power,
    exact_curve,
    frequency_grid,
    log_transfer,
)
from utils.errors import DomainError, ValidationError

logger = logging.getLogger(__name__)

Tables = Dict[str, Dict[str, Sequence]]

# Transfer-function families behind the three ETF figures: (m values, k values, closed-form KZ overlays)
ETF_FIGURES = {
    1: ([7.0], list(range(1, 7)), []),
    2: ([float(m) for m in range(3, 14, 2)], [1], []),
    3: ([1.0 + 0.5 * i for i in range(13)], [1], [3.0, 5.0, 7.0]),
}


def _flatten(groups: Optional[List[List]]) -> list:
    return [value for group in (groups or []) for value in group]


def _unique_specs(m_values: Sequence[float], k_values: Sequence[int],
                  boundary: BoundaryPolicy = BoundaryPolicy.MISSING) -> List[FilterSpec]:
    specs: List[FilterSpec] = []
    for m_r, k in product(m_values, k_values):
        spec = FilterSpec(m_r, k, boundary)
        if spec not in specs:
            specs.append(spec)
    return specs


def _column_spec(args) -> ColumnSpec:
    kwargs = {
        "value_column": _column_ref(args.value_column) if args.value_column is not None else -1,
        "time_column": _column_ref(args.time_column) if args.time_column is not None else None,
        "delimiter": args.delimiter,
        "header": not args.no_header,
    }
    if args.missing_token:
        kwargs["missing_tokens"] = frozenset(args.missing_token)
    return ColumnSpec(**kwargs)


def _column_ref(text: str):
    """Column names stay strings; a bare (possibly negative) integer is an index."""
    stripped = text.strip()
    if stripped.lstrip("-").isdigit():
        return int(stripped)
    return text


# ── coeffs ───────────────────────────────────────────────────────────────────

def cmd_coeffs(args) -> Tables:
    spec = FilterSpec(args.m, args.k)
    window = ekz_coefficients(spec.m_r, spec.k)
    table = {"offset": window.offsets, "weight": window.weights}
    if args.normalized:
        table["normalized"] = window.normalized()
    logger.info("%s: %d taps, half-width %d", spec.label(), len(window), window.half_width)
    return {"coefficients": table}


# ── filter ───────────────────────────────────────────────────────────────────

def cmd_filter(args) -> Tables:
    series = read_timeseries(args.input, _column_spec(args))
    spec = FilterSpec(args.m, args.k, BoundaryPolicy.from_name(args.boundary))

    out = apply_filter(series, spec, iterated=args.iterated)
    table = {"index": np.arange(len(series)), spec.label(): out.values}

    if args.residual:
        table["residual"] = residual(series, spec, iterated=args.iterated).values
    if args.compare_kz:
        for neighbour in neighbouring_kz(spec):
            table[neighbour.label()] = apply_filter(series, neighbour, iterated=args.iterated).values

    observed = len(out) - out.n_missing
    logger.info("%s (%s form): %d of %d output samples observed", spec.label(),
                "iterated" if args.iterated else "direct", observed, len(out))
    return {"filtered": table}


# ── etf ──────────────────────────────────────────────────────────────────────

def _etf_kinds(args) -> List[str]:
    if args.kind == "both":
        return ["exact", "closed-form"]
    return [args.kind]


def _harmonics(m_values) -> List[float]:
    """j / m for each integer window length m >= 2, where its ETF is exactly zero."""
    return [j / m for m in m_values if float(m).is_integer() and m >= 2 for j in range(1, int(m) // 2 + 1)]


def cmd_etf(args) -> Tables:
    overlays: List[float] = []
    if args.figure is not None:
        if args.k:
            raise DomainError("--k cannot be combined with --figure")
        m_values, k_values, overlays = ETF_FIGURES[args.figure]
    else:
        m_values = _flatten(args.m)
        k_values = _flatten(args.k) or [1]

    grid = frequency_grid(args.grid, list(args.freq or ()) + _harmonics(m_values))
    specs = _unique_specs(m_values, k_values)

    curves = []
    for spec in specs:
        for kind in _etf_kinds(args):
            curves.append(exact_curve(spec, grid) if kind == "exact" else closed_form_curve(spec, grid))
    for m in overlays:
        curves.append(closed_form_curve(FilterSpec(m, 1), grid))

    if args.log:
        curves = [log_transfer(curve) for curve in curves]

    table = {"frequency": grid}
    for curve in curves:
        table[curve.column_name()] = curve.values
    logger.info("Evaluated %d transfer curve(s) on %d frequencies", len(curves), grid.size)
    return {"etf": table}


# ── cutoff ───────────────────────────────────────────────────────────────────

def cmd_cutoff(args) -> Tables:
    specs = _unique_specs(_flatten(args.m), _flatten(args.k) or [1])
    return {"cutoff": {
        "m_r": [spec.m_r for spec in specs],
        "k": [spec.k for spec in specs],
        "cutoff": [cutoff_half_power(spec.m_r, spec.k) for spec in specs],
    }}


# ── periodogram ──────────────────────────────────────────────────────────────

def cmd_periodogram(args) -> Tables:
    series = read_timeseries(args.input, _column_spec(args))
    pg = periodogram(series)
    if args.log:
        return {"periodogram": {"frequency": pg.frequencies, "log_power": log_power(pg).power}}
    return {"periodogram": {"frequency": pg.frequencies, "power": pg.power}}


# ── simulate ─────────────────────────────────────────────────────────────────

def cmd_simulate(args) -> Tables:
    config = ConfigManager()
    n = args.n
    if n is None and (args.full_scale or args.figure is not None):
        n = config.get_full_length() if args.full_scale else config.get_quick_length()

    if args.recipe:
        recipe = load_recipe(args.recipe).with_overrides(n=n, seed=args.seed)
    else:
        seed = config.get_default_seed() if args.seed is None else args.seed
        recipe = figure_recipe(args.figure, n, seed)

    grid = frequency_grid(args.grid) if args.grid is not None else None
    return run_experiment(recipe, grid=grid).tables()


# ── fixture ──────────────────────────────────────────────────────────────────

def cmd_fixture(args) -> Tables:
    seed = ConfigManager().get_default_seed() if args.seed is None else args.seed
    kwargs = {"seed": seed}
    if args.noise is not None:
        if args.noise < 0:
            raise DomainError(f"noise sigma must be >= 0 (got {args.noise})")
        kwargs["noise_sigma"] = args.noise
    if args.n is not None:
        kwargs["n"] = args.n

    if args.kind == "six-hourly":
        hours, series = six_hourly_fixture(**kwargs)
        times = iso_timestamps(len(series), 6.0)
        return {"fixture": {"time": times, series.label: series.values}}

    days, series = daily_fixture(**kwargs)
    return {"fixture": {"day": days, series.label: series.values}}


# ── config ───────────────────────────────────────────────────────────────────

def cmd_config(args) -> None:
    config = ConfigManager()
    if args.action == "show":
        sys.stdout.write(json.dumps(config.effective_config(), indent=2, sort_keys=True) + "\n")
        return None
    if args.action == "set":
        if args.key is None or args.value is None:
            raise ValidationError("config set needs a key and a value")
        if config.set_value(args.key, args.value):
            config.save_config()
        else:
            logger.info("'%s' already set to %s", args.key, args.value)
        return None
    raise ValidationError(f"unknown config action '{args.action}'")

"""
csv_reader.py
─────────────
Reads one value column (and optionally a time column) of a delimited text
file into a ``TimeSeries``.

Cells are read as text by pandas and converted here, so that float parsing is
exact (round-trips what ``table_writer`` wrote) and every failure can name its
line.  A blank line is a row of blank cells, so a one-column file keeps
its missing samples in place; only the empty lines at the end are dropped.
A time column is only used to check that the grid is uniform; no
resampling is ever done.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import FrozenSet, Optional, Union

import numpy as np
import pandas as pd

from config.config_manager import ConfigManager
from ekz.timeseries import TimeSeries
from utils.errors import DataError, FileError, GridError, ParseError, ValidationError

logger = logging.getLogger(__name__)

Column = Union[str, int]

_QUOTE_CHARS = {'"', "'"}


@dataclass(frozen=True)
class ColumnSpec:
    """Which columns to read and how.

    ``value_column`` / ``time_column`` are header names or 0-based indices
    (negative indices count from the right; the default is the last column).
    """

    value_column: Column = -1
    time_column: Optional[Column] = None
    missing_tokens: FrozenSet[str] = field(default_factory=lambda: frozenset(ConfigManager().get_missing_tokens()))
    delimiter: str = ","
    header: bool = True

    def __post_init__(self):
        if len(self.delimiter) != 1:
            raise ValidationError(f"delimiter must be a single character (got {self.delimiter!r})")
        if self.delimiter in _QUOTE_CHARS:
            raise ValidationError("delimiter cannot be a quote character")
        object.__setattr__(self, "missing_tokens", frozenset(self.missing_tokens))


def _resolve(frame: pd.DataFrame, column: Column, role: str) -> str:
    names = list(frame.columns)
    if isinstance(column, (int, np.integer)) and not isinstance(column, bool):
        if -len(names) <= column < len(names):
            return names[column]
        raise ValidationError(f"{role} column index {column} out of range ({len(names)} columns)")
    text = str(column)
    if text in names:
        return text
    stripped = {str(n).strip(): n for n in names}
    if text.strip() in stripped:
        return stripped[text.strip()]
    if text.isdigit() and int(text) < len(names):
        return names[int(text)]
    raise ValidationError(f"{role} column '{column}' not found (columns: {', '.join(map(str, names))})")


def _parse_times(cells, first_line: int, path: str) -> np.ndarray:
    """Numbers as given; ISO-8601 timestamps as seconds since the epoch."""
    numeric = pd.to_numeric(pd.Series(cells), errors="coerce").to_numpy(dtype=np.float64)
    if np.all(np.isfinite(numeric)):
        return numeric

    stamps = pd.to_datetime(pd.Series(cells), utc=True, errors="coerce")
    if stamps.notna().all():
        return (stamps - pd.Timestamp(0, tz="UTC")).dt.total_seconds().to_numpy(dtype=np.float64)

    bad = int(np.flatnonzero(stamps.isna().to_numpy())[0])
    raise ParseError(f"time value '{cells[bad]}' is neither a number nor a timestamp", path, first_line + bad)


def _check_uniform(times: np.ndarray, rtol: float) -> float:
    """Returns the grid step; rows in messages are 1-based data rows."""
    if times.size < 2:
        return 1.0
    steps = np.diff(times)
    step = steps[0]
    if not step > 0:
        raise GridError(f"time column must increase; row 2 has step {step:g}", row=2)
    off = np.flatnonzero(np.abs(steps - step) > rtol * abs(step))
    if off.size:
        i = int(off[0])
        raise GridError(
            f"non-uniform time grid at row {i + 2}: step {steps[i]:g} differs from {step:g}",
            row=i + 2,
        )
    return float(step)


def _drop_trailing_blank_rows(frame: pd.DataFrame) -> pd.DataFrame:
    """Blank cells as "", without the empty rows at the end of the file."""
    filled = frame.fillna("").astype(str)
    blank = (filled.apply(lambda c: c.str.strip()) == "").all(axis=1).to_numpy()
    keep = len(blank)
    while keep and blank[keep - 1]:
        keep -= 1
    return filled.iloc[:keep]


def read_timeseries(path: str, spec: Optional[ColumnSpec] = None) -> TimeSeries:
    """Read a uniform time series from a delimited file."""
    spec = spec or ColumnSpec()
    try:
        frame = pd.read_csv(
            path,
            sep=spec.delimiter,
            header=0 if spec.header else None,
            dtype=str,
            keep_default_na=False,
            na_filter=False,
            skip_blank_lines=False,
            quotechar='"',
            encoding="utf-8",
        )
    except FileNotFoundError as e:
        raise FileError("file not found", path) from e
    except pd.errors.EmptyDataError as e:
        raise DataError(f"{path}: file is empty") from e
    except pd.errors.ParserError as e:
        raise ParseError(str(e).strip(), path) from e
    except UnicodeDecodeError as e:
        raise ParseError(f"not valid UTF-8 ({e.reason})", path) from e
    except OSError as e:
        raise FileError(e.strerror or str(e), path) from e

    frame = _drop_trailing_blank_rows(frame)
    if frame.empty:
        raise DataError(f"{path}: file has no data rows")
    if not spec.header:
        frame.columns = list(range(frame.shape[1]))

    first_line = 2 if spec.header else 1
    value_name = _resolve(frame, spec.value_column, "value")
    cells = frame[value_name].tolist()

    values = np.empty(len(cells), dtype=np.float64)
    missing = np.zeros(len(cells), dtype=bool)
    for i, cell in enumerate(cells):
        token = cell.strip()
        if token in spec.missing_tokens or cell in spec.missing_tokens:
            missing[i] = True
            values[i] = np.nan
            continue
        try:
            number = float(token)
        except ValueError:
            raise ParseError(f"cannot parse '{cell}' as a number", path, first_line + i) from None
        if not math.isfinite(number):
            raise ParseError(f"non-finite value '{cell}'", path, first_line + i)
        values[i] = number

    time_step = 1.0
    if spec.time_column is not None:
        time_name = _resolve(frame, spec.time_column, "time")
        time_cells = [c.strip() for c in frame[time_name].tolist()]
        for i, cell in enumerate(time_cells):
            if cell in spec.missing_tokens:
                raise ParseError("time column cannot be missing", path, first_line + i)
        times = _parse_times(time_cells, first_line, path)
        time_step = _check_uniform(times, ConfigManager().get_uniform_grid_rtol())

    series = TimeSeries(values, missing, time_step=time_step, label=str(value_name))
    logger.info("Read %d samples (%d missing) from %s", len(series), series.n_missing, path)
    return series

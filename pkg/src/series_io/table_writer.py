"""
table_writer.py
───────────────
Writes named columns as CSV or JSON.

CSV: header row, comma delimiter, missing values as ``NA`` and reals with 17
significant digits, so a written double reads back bit for bit.
JSON: ``{table: {column: [values]}}`` with missing values as ``null``.
"""

import json
import logging
import math
from typing import Dict, Mapping, Sequence

import numpy as np
import pandas as pd

from utils.errors import ValidationError
from utils.file_utils import atomic_write_text

logger = logging.getLogger(__name__)

Columns = Mapping[str, Sequence]

MISSING_TOKEN = "NA"
FLOAT_FORMAT = "%.17g"


def _validate(columns: Columns) -> int:
    if not columns:
        raise ValidationError("a table needs at least one column")
    lengths = {name: len(values) for name, values in columns.items()}
    if len(set(lengths.values())) > 1:
        detail = ", ".join(f"{name}={length}" for name, length in lengths.items())
        raise ValidationError(f"columns differ in length ({detail})")
    return next(iter(lengths.values()))


def render_csv(columns: Columns) -> str:
    _validate(columns)
    frame = pd.DataFrame({name: np.asarray(values) for name, values in columns.items()})
    return frame.to_csv(
        None,
        index=False,
        na_rep=MISSING_TOKEN,
        float_format=FLOAT_FORMAT,
        lineterminator="\n",
    )


def _json_value(value):
    if value is None or isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    number = float(value)
    return None if math.isnan(number) else number


def render_json(tables: Mapping[str, Columns]) -> str:
    document: Dict[str, Dict[str, list]] = {}
    for table_name, columns in tables.items():
        _validate(columns)
        document[table_name] = {
            name: [_json_value(v) for v in np.asarray(values).tolist()]
            for name, values in columns.items()
        }
    return json.dumps(document, indent=2, allow_nan=False) + "\n"


def write_table(path: str, columns: Columns, fmt: str = "csv", name: str = "table") -> None:
    """Write one table to *path* atomically."""
    if fmt == "csv":
        text = render_csv(columns)
    elif fmt == "json":
        text = render_json({name: columns})
    else:
        raise ValidationError(f"unknown table format '{fmt}' (use csv or json)")
    atomic_write_text(path, text)
    logger.info("Wrote %s (%d rows) to %s", name, _validate(columns), path)

"""
Emission of command results.

One table goes to ``--output`` as a single file; several tables go to
``--output`` as a directory holding ``<table>.csv`` / ``<table>.json``.  Without
``--output`` everything is written to stdout: CSV tables are each preceded by
a ``# <table>`` line when there is more than one, JSON is one document.
"""

import logging
import os
import sys
from typing import Dict, Mapping, Optional

from series_io.table_writer import Columns, render_csv, render_json, write_table
from utils.errors import FileError

logger = logging.getLogger(__name__)


def _to_stdout(tables: Mapping[str, Columns], fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(render_json(tables))
    elif len(tables) == 1:
        sys.stdout.write(render_csv(next(iter(tables.values()))))
    else:
        chunks = [f"# {name}\n{render_csv(columns)}" for name, columns in tables.items()]
        sys.stdout.write("\n".join(chunks))
    sys.stdout.flush()


def emit_tables(tables: Dict[str, Columns], output: Optional[str], fmt: str) -> None:
    """Write every table; raises on the first failure."""
    if not output or output == "-":
        _to_stdout(tables, fmt)
        return

    if len(tables) == 1:
        name, columns = next(iter(tables.items()))
        write_table(output, columns, fmt, name)
        return

    if os.path.exists(output) and not os.path.isdir(output):
        raise FileError("several tables need a directory, not a file", output)
    os.makedirs(output, exist_ok=True)
    for name, columns in tables.items():
        write_table(os.path.join(output, f"{name}.{fmt}"), columns, fmt, name)
    logger.info("Wrote %d tables to %s", len(tables), output)

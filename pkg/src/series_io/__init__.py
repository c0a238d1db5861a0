# Flat-file input and output of series and analysis tables
from series_io.csv_reader import ColumnSpec, read_timeseries
from series_io.table_writer import render_csv, render_json, write_table

__all__ = ["ColumnSpec", "read_timeseries", "render_csv", "render_json", "write_table"]

# Command-line front end
from cli.output import emit_tables
from cli.parser import build_parser

__all__ = ["build_parser", "emit_tables"]

"""
Argument parser for the ``ekz`` command line.

Every subcommand shares the output flags (``--output``, ``--format``) and the
process flags (``--quiet``, ``--config``, ``--log-file``); input subcommands
also share the column-selection flags.
"""

import argparse

from cli import commands
from utils.numbers import parse_int_list, parse_real, parse_real_list


def _argument_type(parse, what):
    def convert(text):
        try:
            return parse(text)
        except ValueError as e:
            raise argparse.ArgumentTypeError(f"invalid {what} '{text}': {e}")
    convert.__name__ = what
    return convert


real = _argument_type(parse_real, "real")
real_list = _argument_type(parse_real_list, "real list")
int_list = _argument_type(parse_int_list, "integer list")


class CommandParser(argparse.ArgumentParser):
    """Reports usage errors as one ``usage: <command>: <message>`` line, exit status 2."""

    def error(self, message):
        self.exit(2, f"usage: {self.prog}: {' '.join(message.split())}\n")


def _common_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    group = parent.add_argument_group("output and logging")
    group.add_argument("-o", "--output", default=None,
                       help="Output file (one table) or directory (several); default stdout")
    group.add_argument("--format", choices=("csv", "json"), default="csv", help="Table format")
    group.add_argument("-q", "--quiet", action="store_true", help="Only log warnings and errors")
    group.add_argument("-v", "--verbose", action="store_true", help="Log debug detail")
    group.add_argument("--config", default=None, help="Configuration file to use instead of ~/.ekz/config.json")
    group.add_argument("--log-file", default=None, help="Also append log records to this file")
    return parent


def _input_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    group = parent.add_argument_group("input")
    group.add_argument("-i", "--input", required=True, help="Delimited text file holding the series")
    group.add_argument("--value-column", default=None, help="Value column name or 0-based index (default: last)")
    group.add_argument("--time-column", default=None, help="Time column checked for a uniform grid")
    group.add_argument("--delimiter", default=",", help="Field delimiter (default ',')")
    group.add_argument("--no-header", action="store_true", help="The file has no header row")
    group.add_argument("--missing-token", action="append", default=None,
                       help="Token marking a missing value (repeatable; replaces the configured set)")
    return parent


def build_parser(version: str) -> argparse.ArgumentParser:
    common = _common_parent()
    source = _input_parent()

    parser = CommandParser(
        prog="ekz",
        description="Extended Kolmogorov-Zurbenko filtering, transfer functions and periodograms.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {version}")
    sub = parser.add_subparsers(dest="command", metavar="<command>")
    sub.required = True

    p = sub.add_parser("coeffs", parents=[common], help="Print the coefficient window of EKZ(m, k)")
    p.add_argument("--m", type=real, required=True, help="Window length m_r >= 1 (accepts pi, a/b)")
    p.add_argument("--k", type=int, default=1, help="Number of passes (default 1)")
    p.add_argument("--normalized", action="store_true", help="Add the weights divided by m_r^k")
    p.set_defaults(handler=commands.cmd_coeffs)

    p = sub.add_parser("filter", parents=[common, source], help="Filter a series read from a file")
    p.add_argument("--m", type=real, required=True, help="Window length m_r >= 1")
    p.add_argument("--k", type=int, default=1, help="Number of passes (default 1)")
    p.add_argument("--boundary", choices=("missing", "renorm"), default="missing",
                   help="Edge and gap policy (default missing)")
    p.add_argument("--iterated", action="store_true", help="Apply the single-pass window k times")
    p.add_argument("--residual", action="store_true", help="Add the residual column x - EKZ(x)")
    p.add_argument("--compare-kz", action="store_true", help="Add the neighbouring odd-window KZ outputs")
    p.set_defaults(handler=commands.cmd_filter)

    p = sub.add_parser("etf", parents=[common], help="Energy transfer function curves")
    family = p.add_mutually_exclusive_group(required=True)
    family.add_argument("--m", type=real_list, action="append",
                        help="Window length(s); repeatable, e.g. 7 or 3,5,7 or 1..7:0.5")
    family.add_argument("--figure", type=int, choices=sorted(commands.ETF_FIGURES),
                        help="Preset transfer-function family")
    p.add_argument("--k", type=int_list, action="append", help="Pass count(s); e.g. 2 or 1..6")
    kind = p.add_mutually_exclusive_group()
    kind.add_argument("--exact", dest="kind", action="store_const", const="exact",
                      help="Squared response of the coefficients (default)")
    kind.add_argument("--closed-form", dest="kind", action="store_const", const="closed-form",
                      help="The (sin / sin)^2k expression")
    kind.add_argument("--both", dest="kind", action="store_const", const="both", help="Both kinds")
    p.set_defaults(kind="exact")
    p.add_argument("--grid", type=int, default=None, help="Grid points on [0, 0.5]")
    p.add_argument("--freq", type=real, action="append", help="Extra frequency to include (repeatable)")
    p.add_argument("--log", action="store_true", help="Natural log with the configured floor")
    p.set_defaults(handler=commands.cmd_etf)

    p = sub.add_parser("cutoff", parents=[common], help="Half-power cutoff frequency")
    p.add_argument("--m", type=real_list, action="append", required=True, help="Window length(s)")
    p.add_argument("--k", type=int_list, action="append", help="Pass count(s) (default 1)")
    p.set_defaults(handler=commands.cmd_cutoff)

    p = sub.add_parser("periodogram", parents=[common, source], help="Periodogram of a series")
    p.add_argument("--log", action="store_true", help="Natural log of the power with the configured floor")
    p.set_defaults(handler=commands.cmd_periodogram)

    p = sub.add_parser("simulate", parents=[common], help="Run a white-noise filtering experiment")
    recipe = p.add_mutually_exclusive_group(required=True)
    recipe.add_argument("--recipe", help="Recipe file")
    recipe.add_argument("--figure", type=int, choices=(4, 5), help="Preset experiment")
    p.add_argument("--n", type=int, default=None, help="Series length (overrides the recipe)")
    p.add_argument("--seed", type=int, default=None, help="Noise seed (overrides the recipe)")
    p.add_argument("--full-scale", action="store_true", help="Use the configured full-scale length")
    p.add_argument("--grid", type=int, default=None, help="ETF grid points")
    p.set_defaults(handler=commands.cmd_simulate)

    p = sub.add_parser("fixture", parents=[common], help="Write a synthetic series file")
    p.add_argument("--kind", choices=("six-hourly", "daily"), required=True)
    p.add_argument("--seed", type=int, default=None, help="Noise seed")
    p.add_argument("--noise", type=float, default=None, help="Noise sigma (0 for a noise-free series)")
    p.add_argument("--n", type=int, default=None, help="Length (default: one year / sixty years)")
    p.set_defaults(handler=commands.cmd_fixture)

    p = sub.add_parser("config", parents=[common], help="Show or change settings")
    p.add_argument("action", choices=("show", "set"))
    p.add_argument("key", nargs="?")
    p.add_argument("value", nargs="?")
    p.set_defaults(handler=commands.cmd_config)

    return parser

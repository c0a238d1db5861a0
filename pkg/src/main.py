import sys

from cli.output import emit_tables
from cli.parser import build_parser
from config.config_manager import ConfigManager
from utils.error_handler import log_error, setup_error_handling
from utils.errors import EKZError

# Application Version - Single source of truth
VERSION = "1.0.0"


def main(argv=None) -> int:
    """Command line entry point; returns the process exit code."""
    parser = build_parser(VERSION)
    args = parser.parse_args(argv)

    try:
        setup_error_handling(quiet=args.quiet, log_file=args.log_file, verbose=args.verbose)
        if args.config:
            ConfigManager.reset(args.config)

        tables = args.handler(args)
        if tables is not None:
            emit_tables(tables, args.output, args.format)
        return 0
    except EKZError as e:
        print(e.one_line(), file=sys.stderr)
        return e.exit_code
    except KeyboardInterrupt:
        print("interrupted", file=sys.stderr)
        return 130
    except Exception as e:
        log_error(e, f"Unexpected error in '{args.command}'")
        return 1


if __name__ == "__main__":
    sys.exit(main())

# Logging and global error handling
import logging
import sys
import traceback
from typing import Optional

LOG_FORMAT = "[%(asctime)s] %(levelname)s %(name)s: %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"

logger = logging.getLogger("ekz")


def setup_error_handling(quiet: bool = False, log_file: Optional[str] = None, verbose: bool = False):
    """Configure the ``ekz`` logger and route uncaught exceptions through it.

    Records go to stderr; stdout is reserved for data.  ``log_file`` appends
    the same records to a file.
    """
    root = logging.getLogger()
    for handler in list(root.handlers):
        if getattr(handler, "_ekz_handler", False):
            root.removeHandler(handler)
            handler.close()

    formatter = logging.Formatter(LOG_FORMAT, DATE_FORMAT)

    stream_handler = logging.StreamHandler(sys.stderr)
    stream_handler.setFormatter(formatter)
    stream_handler._ekz_handler = True
    root.addHandler(stream_handler)

    if log_file:
        file_handler = logging.FileHandler(log_file, mode="a", encoding="utf-8")
        file_handler.setFormatter(formatter)
        file_handler._ekz_handler = True
        root.addHandler(file_handler)

    if quiet:
        root.setLevel(logging.WARNING)
    elif verbose:
        root.setLevel(logging.DEBUG)
    else:
        root.setLevel(logging.INFO)

    sys.excepthook = global_exception_handler


def global_exception_handler(exc_type, exc_value, exc_traceback):
    """Handle uncaught exceptions"""
    # Let Ctrl+C behave normally
    if issubclass(exc_type, KeyboardInterrupt):
        sys.__excepthook__(exc_type, exc_value, exc_traceback)
        return

    error_msg = "".join(traceback.format_exception(exc_type, exc_value, exc_traceback))
    log_error(exc_value, "Uncaught exception", error_msg)


def log_error(exception, context="", full_trace=""):
    """
    Log an error with its context and traceback at ERROR level.
    """
    if not full_trace:
        # format_exc() is safe to call outside of an except block
        full_trace = traceback.format_exc()
        if full_trace.strip() == "NoneType: None":
            full_trace = ""

    message = f"{context}: {exception}" if context else str(exception)
    if full_trace:
        message += f"\n{full_trace.rstrip()}"
    logger.error(message)

"""
errors.py
─────────
Exception hierarchy shared by every package.

Each error carries a short machine-parsable ``category`` and the process exit
code the CLI uses when the error escapes a command.  The CLI prints exactly
one ``<category>: <message>`` line for these.
"""

from typing import Optional


class EKZError(Exception):
    """Base class for all toolkit errors."""

    category = "error"
    exit_code = 1

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message

    def one_line(self) -> str:
        return f"{self.category}: {self.message}".replace("\n", " ")


class DomainError(EKZError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""

    category = "domain"
    exit_code = 2


class ResourceError(EKZError):
    """A request would exceed a configured resource limit."""

    category = "resource"
    exit_code = 4


class DataError(EKZError):
    """The data cannot be used for the requested operation (e.g. gaps)."""

    category = "data"
    exit_code = 3


class ValidationError(EKZError, ValueError):
    category = "validation"
    exit_code = 3


class ParseError(EKZError):
    """A file could not be parsed; ``line`` is 1-based when known."""

    category = "parse"
    exit_code = 3

    def __init__(self, message: str, path: Optional[str] = None, line: Optional[int] = None):
        location = ""
        if path is not None:
            location = f"{path}"
            if line is not None:
                location += f":{line}"
            location += ": "
        elif line is not None:
            location = f"line {line}: "
        super().__init__(location + message)
        self.path = path
        self.line = line


class GridError(EKZError):
    """The time column of a series is not a uniform grid."""

    category = "grid"
    exit_code = 3

    def __init__(self, message: str, row: int):
        super().__init__(message)
        self.row = row


class FileError(EKZError):
    category = "io"
    exit_code = 5

    def __init__(self, message: str, path: Optional[str] = None):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path

"""
File utilities.
Atomic text writes shared by the config manager and the table writer.
"""

import os

from utils.errors import FileError


def atomic_write_text(path: str, text: str) -> None:
    """
    Write *text* to *path* through a ``.tmp`` sibling and ``os.replace``.

    The live file is only touched by the final replace, so a failure part-way
    leaves any previous file intact.  Raises ``FileError`` on failure.
    """
    directory = os.path.dirname(os.path.abspath(path))
    temp_path = path + ".tmp"
    try:
        os.makedirs(directory, exist_ok=True)
        with open(temp_path, "w", encoding="utf-8", newline="") as f:
            f.write(text)
            f.flush()
            try:
                os.fsync(f.fileno())
            except OSError:
                # some file systems reject fsync; flush() is enough here
                pass
        os.replace(temp_path, path)
    except OSError as e:
        raise FileError(str(e), path) from e
    finally:
        if os.path.exists(temp_path):
            try:
                os.remove(temp_path)
            except OSError:
                pass

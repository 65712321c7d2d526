import os
import tempfile
from pathlib import Path
from typing import Union

from rich.console import Console

console = Console()
error_console = Console(stderr=True)


class Theme:
    PRIMARY = "#3c6eb4"
    SECONDARY = "#2980b9"
    SUCCESS = "#27ae60"
    WARNING = "#f39c12"
    ERROR = "#c0392b"
    TEXT = "white"
    DIM_TEXT = "dim white"
    BORDER = "blue"


def atomic_write(path: Union[str, Path], data: bytes) -> Path:
    """
    Writes bytes to a temporary file next to ``path`` and renames it into place.
    On any failure the temporary file is removed and the target is left untouched.
    """
    target = Path(path)
    directory = target.parent if str(target.parent) else Path(".")
    fd, tmp_name = tempfile.mkstemp(prefix=f".{target.name}.", suffix=".tmp", dir=directory)
    try:
        with os.fdopen(fd, "wb") as f:
            f.write(data)
            f.flush()
            os.fsync(f.fileno())
        os.replace(tmp_name, target)
    except BaseException:
        try:
            os.unlink(tmp_name)
        except OSError:
            pass
        raise
    return target


def format_ratio(value, precision=3):
    """Formats an optional rational or float; '-' when undefined."""
    if value is None:
        return "-"
    return f"{float(value):.{precision}f}"

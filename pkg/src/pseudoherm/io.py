"""Flat-file output helpers: atomic writes, CSV with comment headers."""

from __future__ import annotations

import os
import tempfile
from collections.abc import Sequence

import numpy as np

__all__ = ["atomic_write_text", "format_float", "write_csv"]


def format_float(x: float) -> str:
    """17-significant-digit decimal form (fixed across runs and platforms)."""
    if x != x:
        return "nan"
    return format(float(x), ".17g")


def atomic_write_text(path: str, text: str) -> None:
    """Write-temp-then-rename so readers never see a partial file."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_csv(
    path: str,
    header: Sequence[str],
    columns: Sequence[np.ndarray],
    comments: Sequence[str] = (),
) -> None:
    """CSV with optional '#'-prefixed comment lines before the header row.

    Comma separated, decimal point, no locale; floats at 17 significant
    digits.
    """
    lines = [f"# {c}" for c in comments]
    lines.append(",".join(header))
    rows = len(columns[0])
    for i in range(rows):
        cells = []
        for col in columns:
            v = col[i]
            if isinstance(v, (float, np.floating)):
                cells.append(format_float(float(v)))
            else:
                cells.append(str(v))
        lines.append(",".join(cells))
    atomic_write_text(path, "\n".join(lines) + "\n")

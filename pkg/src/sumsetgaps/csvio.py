"""CSV output with one fixed convention everywhere.

Comma separator, '.' decimal point, '\\n' line endings, mandatory header row.
Floats are printed with 17 significant digits so every value round-trips to
the same double; booleans become 0/1.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np


def format_value(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    if isinstance(value, np.integer):
        return str(int(value))
    return str(value)


def write_rows(stream, header, rows) -> None:
    stream.write(",".join(header) + "\n")
    for row in rows:
        stream.write(",".join(format_value(v) for v in row) + "\n")


def write_csv(path, header, rows) -> Path:
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="") as stream:
        write_rows(stream, header, rows)
    return path

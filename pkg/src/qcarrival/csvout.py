"""CSV emission with a fixed schema.

Columns: axis,axis_value,grid,grid_value,quantity,value,error
The error column is empty for deterministic quantities, carries std_error for
Monte Carlo estimates, and carries the failure message for error rows.
Numbers are written with 17 significant digits so doubles round-trip exactly.
"""

from __future__ import annotations

import csv
import math

HEADER = ("axis", "axis_value", "grid", "grid_value", "quantity", "value", "error")


def fmt(v) -> str:
    if v is None or (isinstance(v, str) and not v):
        return ""
    if isinstance(v, str):
        return v
    if isinstance(v, float) and math.isnan(v):
        return "nan"
    return f"{v:.17g}"


def write_rows(rows, fh) -> int:
    """Write SweepRow-shaped records; returns the number of data rows."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(HEADER)
    n = 0
    for r in rows:
        writer.writerow(
            (r.axis, fmt(r.axis_value), r.grid, fmt(r.grid_value), r.quantity, fmt(r.value), r.error)
        )
        n += 1
    return n

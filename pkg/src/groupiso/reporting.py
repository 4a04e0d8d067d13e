"""Deterministic rendering of reports as text, JSON, and CSV.

Output depends only on the data: keys are sorted, exact rationals are
rendered as ``p/q`` strings, floats use their shortest round trip
representation, and rows keep their given order.  Identical inputs give
identical bytes.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from pathlib import Path

import numpy as np


def coerce(value):
    """Convert report values to JSON friendly, deterministic primitives."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, np.ndarray):
        return [coerce(x) for x in value.tolist()]
    if isinstance(value, dict):
        return {str(k): coerce(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [coerce(v) for v in value]
    return value


def json_dumps(obj) -> str:
    return json.dumps(coerce(obj), sort_keys=True, separators=(",", ":")) + "\n"


def write_json(path: str | Path, obj) -> None:
    Path(path).write_text(json_dumps(obj))


def csv_text(headers: list[str], rows: list[tuple]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(headers)
    for row in rows:
        writer.writerow([coerce(x) if not isinstance(x, str) else x for x in row])
    return buf.getvalue()


def write_csv(path: str | Path, headers: list[str], rows: list[tuple]) -> None:
    Path(path).write_text(csv_text(headers, rows))


def render_table(headers: list[str], rows: list[tuple]) -> str:
    """Fixed width text table."""
    cells = [[_cell(x) for x in row] for row in rows]
    widths = [len(h) for h in headers]
    for row in cells:
        for i, c in enumerate(row):
            widths[i] = max(widths[i], len(c))
    lines = [
        "  ".join(h.ljust(widths[i]) for i, h in enumerate(headers)).rstrip(),
        "  ".join("-" * widths[i] for i in range(len(headers))),
    ]
    for row in cells:
        lines.append("  ".join(c.ljust(widths[i]) for i, c in enumerate(row)).rstrip())
    return "\n".join(lines) + "\n"


def _cell(x) -> str:
    if isinstance(x, bool):
        return "yes" if x else "no"
    if isinstance(x, float):
        return format(x, ".6g")
    if x is None:
        return "-"
    return str(coerce(x))

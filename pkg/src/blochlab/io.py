"""JSON and CSV output shared by the reports and the CLI."""
from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np

SCHEMA_VERSION = "v1"
TRACE_COLUMNS = ("level", "r_gap_log", "theta", "quantity", "log_scale_flag")


def jsonable(obj):
    """Plain JSON types only; non-finite floats become ``null``."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if math.isfinite(x) else None
    if isinstance(obj, complex):
        return [jsonable(obj.real), jsonable(obj.imag)]
    if obj is None or isinstance(obj, str):
        return obj
    if hasattr(obj, "to_json"):
        return jsonable(obj.to_json())
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(payload) -> str:
    return json.dumps(jsonable(payload), indent=2, sort_keys=True, allow_nan=False) + "\n"


def write_json(path, payload) -> None:
    Path(path).write_text(dumps(payload))


def write_trace_csv(path, rows, columns=TRACE_COLUMNS) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(columns)
        for row in rows:
            w.writerow([_cell(row[c]) for c in columns])


def _cell(v):
    if isinstance(v, bool):
        return int(v)
    if isinstance(v, float):
        return repr(v)
    return v

"""
Report Writers for Irrational Base Nets
"""

import csv
import io
import json

from ..models.intervals import interval_row, partition_1d
from .config import NetConfig

PARTITION_COLUMNS = ["level", "anchor_index", "type", "left_float", "right_float", "prime"]
DISC_COLUMNS = ["N", "value", "normalized", "witness_x", "witness_y", "witness_kind"]
TABLE_COLUMNS = ["N", "normalized_star", "kind"]


def _fmt(value):
    return "" if value is None else f"{value:.{NetConfig.FLOAT_DIGITS}g}"


def _csv_text(columns, rows):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    writer.writerows(rows)
    return buffer.getvalue()


def partition_csv(base, levels):
    """One row per cell of each requested partition level."""
    rows = []
    for m in levels:
        rows.extend(interval_row(axis) for axis in partition_1d(base, m))
    return _csv_text(PARTITION_COLUMNS, rows)


def _kind(result):
    kind = "" if result.witness is None else result.witness.kind
    return f"{kind}/bound" if result.bound else kind


def disc_csv(results):
    rows = []
    for r in results:
        w = r.witness
        rows.append([
            r.n,
            _fmt(r.value),
            _fmt(r.normalized),
            "" if w is None else _fmt(w.x),
            "" if w is None else _fmt(w.y),
            _kind(r),
        ])
    return _csv_text(DISC_COLUMNS, rows)


def table_csv(results):
    """Rows N, normalized star discrepancy (two decimals) and exact/bound."""
    rows = [
        [r.n, f"{r.normalized:.2f}", "bound" if r.bound else "exact"]
        for r in results
    ]
    return _csv_text(TABLE_COLUMNS, rows)


def net_json(report, t=None, groups=None):
    """
    NetReport as JSON: {m, s, t_min, checks: [{kvec, passed, failures: [{interval, expected, actual}]}]}.
    """
    data = report.to_dict()
    if t is not None:
        data["t"] = t
        data["passed"] = report.t_min <= t
    if groups is not None:
        data["groups"] = groups.to_dict()
    return json.dumps(data, indent=2) + "\n"


def sequence_json(report):
    return json.dumps(report.to_dict(), indent=2) + "\n"


def write_text(text, path=None, stream=None):
    """Write to `path`, or to `stream` when no path is given."""
    if path:
        with open(path, "w", newline="", encoding="utf-8") as f:
            f.write(text)
    elif stream is not None:
        stream.write(text)

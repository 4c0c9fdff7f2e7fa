"""CSV and JSON serialization of experiment reports."""

from __future__ import annotations

import csv
import io
import json
import math

SCHEMA_VERSION = 1


def fmt_number(x) -> str:
    """17 significant digits; non-finite values spelled out."""
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return f"{x:.17g}"
    return str(x)


def exp_or_zero(log_value: float) -> float:
    """Decimal value of ``exp(log_value)``; underflows to 0.0 by design."""
    if math.isnan(log_value):
        return math.nan
    try:
        return math.exp(log_value)
    except OverflowError:
        return math.inf


def to_csv(columns: list[str], rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([fmt_number(row.get(c)) for c in columns])
    return buf.getvalue()


def _clean(obj):
    # JSON has no NaN/Infinity; keep the output strictly standard
    if isinstance(obj, float):
        if math.isnan(obj):
            return "nan"
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        return obj
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def to_json(report_id: str, spec: dict, rows: list[dict], summary: dict, config: dict | None = None) -> str:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "report": report_id,
        "spec": spec,
        "config": config or {},
        "rows": rows,
        "summary": summary,
    }
    return json.dumps(_clean(doc), indent=2, sort_keys=True) + "\n"

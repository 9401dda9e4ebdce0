"""Versioned CSV / JSON serialization of grid rows."""
import io
import json

from .scan import GridRow

SCHEMA = "qdefcs/1"
COLUMNS = ("observable", "q", "t", "x", "y", "value", "bound", "error_bound")


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    return format(float(value), ".17g")


def rows_to_csv(rows):
    out = io.StringIO()
    out.write(f"schema={SCHEMA}\n")
    out.write(",".join(COLUMNS) + "\n")
    for row in rows:
        out.write(",".join(_fmt(getattr(row, c)) for c in COLUMNS) + "\n")
    return out.getvalue()


def rows_from_csv(text):
    lines = text.split("\n")
    if not lines or lines[0] != f"schema={SCHEMA}":
        raise ValueError(f"missing or unsupported schema line: {lines[0]!r}")
    if lines[1] != ",".join(COLUMNS):
        raise ValueError(f"unexpected header: {lines[1]!r}")
    rows = []
    for line in lines[2:]:
        if not line:
            continue
        fields = line.split(",")
        if len(fields) != len(COLUMNS):
            raise ValueError(f"expected {len(COLUMNS)} fields, got {line!r}")
        obs, *nums = fields
        q, t, x, y, value, bound, err = (float(v) if v else None for v in nums)
        rows.append(GridRow(obs, q, t, x, y, value, bound, err))
    return rows


def rows_to_json(rows):
    payload = {"schema": SCHEMA, "rows": [{c: getattr(r, c) for c in COLUMNS} for r in rows]}
    return json.dumps(payload, indent=1, allow_nan=False) + "\n"


def rows_from_json(text):
    payload = json.loads(text)
    if payload.get("schema") != SCHEMA:
        raise ValueError(f"unsupported schema {payload.get('schema')!r}")
    return [GridRow(**{c: r[c] for c in COLUMNS}) for r in payload["rows"]]

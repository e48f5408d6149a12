"""Tabular curve data and its CSV / JSON serialization."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

SCHEMA_VERSION = 1


@dataclass
class CurveTable:
    columns: list[tuple[str, str]]
    rows: list[tuple[float, ...]] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.metadata.setdefault("schema_version", SCHEMA_VERSION)
        for r in self.rows:
            if len(r) != len(self.columns):
                raise ValueError(f"row {r} has {len(r)} values for {len(self.columns)} columns")

    def column(self, name: str) -> list[float]:
        i = [c[0] for c in self.columns].index(name)
        return [r[i] for r in self.rows]


def _fmt(v: float) -> str:
    v = float(v)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return format(v, ".17g")


def _json_safe(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    return obj


def to_csv(table: CurveTable) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f"{name}[{unit}]" for name, unit in table.columns])
    for r in table.rows:
        w.writerow([_fmt(v) for v in r])
    return buf.getvalue()


def to_json(table: CurveTable) -> str:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "metadata": _json_safe(table.metadata),
        "columns": [{"name": n, "unit": u} for n, u in table.columns],
        "rows": [[float(v) if math.isfinite(float(v)) else None for v in r] for r in table.rows],
    }
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def emit(table: CurveTable, fmt: str = "csv", path: str | Path | None = None) -> str:
    """Serialize ``table``; write to ``path`` when given.  Returns the text."""
    if fmt == "csv":
        text = to_csv(table)
    elif fmt == "json":
        text = to_json(table)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if path is not None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return text


def parse_csv(text: str) -> CurveTable:
    lines = list(csv.reader(io.StringIO(text)))
    cols = []
    for h in lines[0]:
        name, _, unit = h.partition("[")
        cols.append((name, unit.rstrip("]")))
    rows = [tuple(float(v) for v in line) for line in lines[1:] if line]
    return CurveTable(cols, rows)


def parse_json(text: str) -> CurveTable:
    doc = json.loads(text)
    cols = [(c["name"], c["unit"]) for c in doc["columns"]]
    rows = [tuple(math.nan if v is None else float(v) for v in r) for r in doc["rows"]]
    return CurveTable(cols, rows, dict(doc["metadata"]))

"""JSON-lines and CSV reports.

A report is a header line ``{"schema": 1, ...}``, one line per record and a
final ``{"summary": {...}}`` line.  The CSV form carries the same content
with nested fields flattened to dotted column names.
"""
from __future__ import annotations

import csv
import io
import json
from typing import Iterable, Optional

SCHEMA = 1


def _dumps(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"))


def header(mode: str, raw_config: Optional[dict] = None, max_bits: Optional[int] = None) -> dict:
    out = {"schema": SCHEMA, "mode": mode}
    if max_bits is not None:
        out["max_bits"] = max_bits
    if raw_config:
        out["config"] = dict(sorted(raw_config.items()))
    return out


def render_jsonl(head: dict, records: Iterable[dict], summary: dict) -> str:
    lines = [_dumps(head)]
    lines.extend(_dumps(r) for r in records)
    lines.append(_dumps({"summary": summary}))
    return "\n".join(lines) + "\n"


def _flatten(obj, prefix="", out=None) -> dict:
    out = {} if out is None else out
    for key, value in obj.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            _flatten(value, name + ".", out)
        elif isinstance(value, (list, tuple)):
            out[name] = _dumps(value)
        elif value is None:
            out[name] = ""
        else:
            out[name] = value
    return out


def render_csv(head: dict, records: Iterable[dict], summary: dict) -> str:
    rows = [_flatten(r) for r in records]
    columns = ["kind"]
    for row in rows:
        for key in row:
            if key not in columns:
                columns.append(key)
    columns.append("summary")
    buf = io.StringIO()
    buf.write(f"# schema = {SCHEMA}\n")
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({"kind": "record", **row})
    writer.writerow({"kind": "summary", "summary": _dumps(summary)})
    return buf.getvalue()


def render(fmt: str, head: dict, records, summary: dict) -> str:
    if fmt == "jsonl":
        return render_jsonl(head, records, summary)
    if fmt == "csv":
        return render_csv(head, records, summary)
    raise ValueError(f"unknown report format {fmt!r}")


def read_summary(path) -> dict:
    """The summary of a previous report (JSON lines, CSV, or a bare summary line)."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if text.startswith("# schema"):
        for row in csv.DictReader(io.StringIO(text.split("\n", 1)[1])):
            if row.get("kind") == "summary":
                return json.loads(row["summary"])
        raise ValueError(f"no summary row in {path}")
    for line in reversed([ln for ln in text.splitlines() if ln.strip()]):
        try:
            obj = json.loads(line)
        except json.JSONDecodeError:
            continue
        if isinstance(obj, dict) and "summary" in obj:
            return obj["summary"]
        if isinstance(obj, dict) and "mode" in obj and "schema" not in obj:
            return obj
    raise ValueError(f"no summary line in {path}")

"""JSON-lines run records.

A record file starts with one header line carrying the schema version, the
prime, the field header of F_{p^2}, the seed and the options.  Payload items
follow, one per line, and a summary line closes the file.  Nothing that
depends on the machine (timings, worker counts) is written, so that files
are byte-identical for identical inputs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import SchemaMismatch
from .field_tower import make_base_field

__all__ = ["SCHEMA", "RunRecord", "dumps_record", "loads_record", "write_record", "read_record"]

SCHEMA = "howe-ssp/1"


@dataclass
class RunRecord:
    kind: str
    p: int
    seed: int = 0
    options: dict = field(default_factory=dict)
    payload: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)  # kept in memory only

    @property
    def field_header(self) -> dict:
        return make_base_field(self.p).serialize()


def _line(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def dumps_record(rec: RunRecord) -> str:
    lines = [
        _line(
            {
                "schema": SCHEMA,
                "kind": rec.kind,
                "p": rec.p,
                "field": rec.field_header,
                "seed": rec.seed,
                "options": rec.options,
            }
        )
    ]
    for item in rec.payload:
        lines.append(_line({"schema": SCHEMA, "item": item}))
    lines.append(_line({"schema": SCHEMA, "summary": dict(rec.summary, count=len(rec.payload))}))
    return "\n".join(lines) + "\n"


def loads_record(text: str, kind: str | None = None) -> RunRecord:
    """Parse a record, checking version and field header on every line."""
    rows = [json.loads(line) for line in text.splitlines() if line.strip()]
    if not rows:
        raise SchemaMismatch("empty record file")
    for row in rows:
        if row.get("schema") != SCHEMA:
            raise SchemaMismatch(f"unsupported schema {row.get('schema')!r}, expected {SCHEMA!r}")
    head = rows[0]
    if "kind" not in head or "p" not in head:
        raise SchemaMismatch("first line is not a header")
    if kind is not None and head["kind"] != kind:
        raise SchemaMismatch(f"expected a {kind!r} record, found {head['kind']!r}")
    p = head["p"]
    expected = make_base_field(p).serialize()
    if head.get("field") != expected:
        raise SchemaMismatch(f"field header {head.get('field')} does not match {expected}")
    if len(rows) < 2 or "summary" not in rows[-1]:
        raise SchemaMismatch("record file is truncated (no summary line)")
    payload = [r["item"] for r in rows[1:-1]]
    summary = dict(rows[-1]["summary"])
    if summary.pop("count", len(payload)) != len(payload):
        raise SchemaMismatch("summary count does not match the number of items")
    return RunRecord(head["kind"], p, head.get("seed", 0), head.get("options", {}), payload, summary)


def write_record(path, rec: RunRecord) -> None:
    Path(path).write_text(dumps_record(rec), encoding="utf-8")


def read_record(path, kind: str | None = None) -> RunRecord:
    return loads_record(Path(path).read_text(encoding="utf-8"), kind)

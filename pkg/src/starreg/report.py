"""Suite reports and their JSON / CSV serialization.

JSON layout (``schema: 1``)::

    {
      "schema": 1,
      "suite": "diamond",
      "context": "pointed",
      "catalog": "groups<=12",
      "summary": {"pass": n, "fail": n, "error": n, "total": n},
      "records": [
        {"index": 0, "object": "S3", "inputs": "...", "status": "pass",
         "witness": "...", "ms": 0.41, "trace": {...}},
        ...
      ]
    }

CSV is the flattened record table, one row per instance, with the suite and
context repeated on every row and ``trace`` stored as a JSON string.
"""

from __future__ import annotations

import csv
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

SCHEMA = 1
STATUSES = ("pass", "fail", "error")
CSV_FIELDS = ("suite", "context", "index", "object", "inputs", "status", "witness", "ms", "trace")


@dataclass
class InstanceRecord:
    index: int
    object: str
    inputs: str
    status: str
    witness: str = ""
    ms: float = 0.0
    trace: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")


@dataclass
class SuiteReport:
    suite: str
    context: str
    catalog: str = ""
    records: list[InstanceRecord] = field(default_factory=list)

    @property
    def summary(self) -> dict[str, int]:
        counts = {s: 0 for s in STATUSES}
        for r in self.records:
            counts[r.status] += 1
        counts["total"] = len(self.records)
        return counts

    @property
    def failures(self) -> list[InstanceRecord]:
        return [r for r in self.records if r.status != "pass"]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "suite": self.suite,
            "context": self.context,
            "catalog": self.catalog,
            "summary": self.summary,
            "records": [asdict(r) for r in self.records],
        }

    @classmethod
    def from_dict(cls, d: dict) -> SuiteReport:
        if d.get("schema") != SCHEMA:
            raise ValueError(f"unsupported report schema {d.get('schema')!r}")
        rep = cls(d["suite"], d["context"], d.get("catalog", ""), [InstanceRecord(**r) for r in d["records"]])
        if rep.summary != d["summary"]:
            raise ValueError("embedded summary disagrees with the records")
        return rep


def emit_report(r: SuiteReport, path: str | Path, fmt: str = "json") -> None:
    path = Path(path)
    if fmt == "json":
        path.write_text(json.dumps(r.to_dict(), indent=1) + "\n")
    elif fmt == "csv":
        with path.open("w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=CSV_FIELDS)
            w.writeheader()
            for rec in r.records:
                row = asdict(rec)
                row["trace"] = json.dumps(rec.trace, sort_keys=True)
                w.writerow({"suite": r.suite, "context": r.context, **row})
    else:
        raise ValueError(f"unknown report format {fmt!r}")


def load_report(path: str | Path, fmt: str | None = None) -> SuiteReport:
    path = Path(path)
    fmt = fmt or path.suffix.lstrip(".").lower()
    if fmt == "json":
        return SuiteReport.from_dict(json.loads(path.read_text()))
    if fmt != "csv":
        raise ValueError(f"unknown report format {fmt!r}")
    with path.open(newline="") as fh:
        rows = list(csv.DictReader(fh))
    suite = rows[0]["suite"] if rows else ""
    context = rows[0]["context"] if rows else ""
    records = [
        InstanceRecord(
            index=int(row["index"]),
            object=row["object"],
            inputs=row["inputs"],
            status=row["status"],
            witness=row["witness"],
            ms=float(row["ms"]),
            trace=json.loads(row["trace"]),
        )
        for row in rows
    ]
    return SuiteReport(suite, context, "", records)

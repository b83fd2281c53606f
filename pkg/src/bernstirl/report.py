from __future__ import annotations

import csv
import json
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Literal, TextIO

from bernstirl.exact_core import format_rational

RecordKind = Literal[
    "sequence", "coefficient", "identity", "route", "adjudication", "benchmark"
]

ORACLE = "oracle"


def _render(value: Any) -> Any:
    """Rationals become "p/q" strings; plain ints and floats pass through."""
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, Mapping):
        return {k: _render(v) for k, v in value.items()}
    if isinstance(value, list | tuple):
        return [_render(v) for v in value]
    return value


@dataclass(frozen=True)
class OutputRecord:
    kind: RecordKind
    inputs: Mapping[str, Any] = field(default_factory=dict)
    values: Mapping[str, Any] = field(default_factory=dict)
    provenance: str = ORACLE

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "inputs": _render(self.inputs),
            "values": _render(self.values),
            "provenance": self.provenance,
        }

    def flat(self) -> dict[str, Any]:
        """One CSV row: inputs and values flattened under dotted column names."""
        d = self.to_dict()
        row: dict[str, Any] = {"kind": d["kind"], "provenance": d["provenance"]}
        for group in ("inputs", "values"):
            for k, v in d[group].items():
                row[f"{group}.{k}"] = json.dumps(v) if isinstance(v, list | dict) else v
        return row


def write_json(records: Sequence[OutputRecord], stream: TextIO) -> None:
    json.dump({"records": [r.to_dict() for r in records]}, stream, ensure_ascii=False)
    stream.write("\n")


def _columns(rows: Iterable[Mapping[str, Any]]) -> list[str]:
    cols: dict[str, None] = {"kind": None, "provenance": None}
    for row in rows:
        for k in row:
            cols.setdefault(k, None)
    return list(cols)


def write_csv(records: Sequence[OutputRecord], stream: TextIO) -> None:
    rows = [r.flat() for r in records]
    writer = csv.DictWriter(stream, fieldnames=_columns(rows), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: _bool_cell(v) for k, v in row.items()})


def _bool_cell(value: Any) -> Any:
    if isinstance(value, bool):
        return "true" if value else "false"
    return value


def write_records(records: Sequence[OutputRecord], stream: TextIO, fmt: str) -> None:
    if fmt == "json":
        write_json(records, stream)
    elif fmt == "csv":
        write_csv(records, stream)
    else:
        raise ValueError(f"format must be json or csv, got {fmt!r}")

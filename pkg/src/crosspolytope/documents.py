"""JSON point-set documents and run reports.

Floats are written with Python's shortest round-trip ``repr`` (at most 17
significant digits), so a document read back yields bit-identical doubles.
"""
from __future__ import annotations

from dataclasses import dataclass, field
import csv
import json
import math
from pathlib import Path
from typing import Any

import numpy as np


class DocumentError(ValueError):
    """A point-set document is malformed."""


@dataclass
class PointSetDocument:
    dim: int
    points: list[list[float]]
    metadata: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if not isinstance(self.dim, int) or isinstance(self.dim, bool) or self.dim < 1:
            raise DocumentError(f"'dim' must be a positive integer, got {self.dim!r}")
        if not isinstance(self.points, list):
            raise DocumentError("'points' must be a list of coordinate lists")
        for i, row in enumerate(self.points):
            if not isinstance(row, list) or len(row) != self.dim:
                raise DocumentError(f"point {i} does not have {self.dim} coordinates")
            for v in row:
                if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
                    raise DocumentError(f"point {i} has a non-finite or non-numeric entry {v!r}")
        self.points = [[float(v) for v in row] for row in self.points]

    @classmethod
    def from_array(cls, points, **metadata) -> "PointSetDocument":
        a = np.asarray(points, dtype=float)
        return cls(int(a.shape[1]), a.tolist(), dict(metadata))

    def to_array(self) -> np.ndarray:
        return np.array(self.points, dtype=float).reshape(len(self.points), self.dim)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"dim": self.dim, "points": self.points}
        if self.metadata:
            out["metadata"] = self.metadata
        return out

    @classmethod
    def from_dict(cls, data) -> "PointSetDocument":
        if not isinstance(data, dict) or "dim" not in data or "points" not in data:
            raise DocumentError("document must be an object with 'dim' and 'points'")
        meta = data.get("metadata")
        meta = {} if meta is None else meta
        if not isinstance(meta, dict):
            raise DocumentError("'metadata' must be an object")
        return cls(data["dim"], data["points"], dict(meta))

    def dumps(self) -> str:
        return dumps(self.to_dict())

    @classmethod
    def loads(cls, text: str) -> "PointSetDocument":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"not valid JSON: {exc}") from exc
        return cls.from_dict(data)

    def write(self, path) -> None:
        Path(path).write_text(self.dumps() + "\n")

    @classmethod
    def read(cls, path) -> "PointSetDocument":
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise DocumentError(f"cannot read {path}: {exc}") from exc
        return cls.loads(text)


def to_plain(obj):
    """Convert numpy scalars/arrays and tuples into JSON-ready Python objects."""
    if isinstance(obj, dict):
        return {str(k): to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_plain(obj.tolist())
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    return obj


def dumps(obj) -> str:
    return json.dumps(to_plain(obj), indent=2, sort_keys=True, allow_nan=False)


def flatten(obj, prefix: str = "") -> list[tuple[str, Any]]:
    """Flatten nested dicts/lists into ``(dotted.path, scalar)`` rows."""
    obj = to_plain(obj)
    if isinstance(obj, dict):
        rows = []
        for k in sorted(obj):
            rows += flatten(obj[k], f"{prefix}.{k}" if prefix else k)
        return rows
    if isinstance(obj, list):
        rows = []
        for i, v in enumerate(obj):
            rows += flatten(v, f"{prefix}[{i}]")
        return rows
    return [(prefix, obj)]


def write_csv(report: dict, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["field", "value"])
        for key, value in flatten(report):
            w.writerow([key, repr(value) if isinstance(value, float) else value])

"""Fit reports and their canonical JSON encoding."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from ..circle_fit import CircleOrLine
from ..plane_fit import PlaneFit, column_means
from .io import format_float

SCHEMA_VERSION = "1"


def _plain(value):
    """Convert numpy scalars/arrays and tuples into JSON-ready Python values."""
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_plain(v) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    return value


def dumps(value, indent: int = 2, _level: int = 0) -> str:
    """Deterministic JSON with every float written at 17 significant digits."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {dumps(v, indent, _level + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(value, list):
        if not value:
            return "[]"
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value):
            return "[" + ", ".join(dumps(v) for v in value) + "]"
        return "[\n" + ",\n".join(pad + dumps(v, indent, _level + 1) for v in value) + "\n" + end + "]"
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"cannot serialize non-finite float {value!r}")
        return format_float(value)
    return json.dumps(value)


@dataclass
class FitReport:
    input: dict
    plane: dict
    result: dict | None
    diagnostics: dict
    schema_version: str = SCHEMA_VERSION
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {
            "schema_version": self.schema_version,
            "input": self.input,
            "plane": self.plane,
            "result": self.result,
            "diagnostics": self.diagnostics,
        }
        out.update(self.extra)
        return _plain(out)

    def to_json(self) -> str:
        return dumps(self.to_dict()) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> "FitReport":
        data = dict(data)
        known = {k: data.pop(k) for k in ("schema_version", "input", "plane", "result", "diagnostics")}
        return cls(
            input=known["input"],
            plane=known["plane"],
            result=known["result"],
            diagnostics=known["diagnostics"],
            schema_version=known["schema_version"],
            extra=data,
        )

    @classmethod
    def from_json(cls, text: str) -> "FitReport":
        return cls.from_dict(json.loads(text))


def input_summary(points) -> dict:
    pts = np.asarray(points, dtype=float)
    return {
        "n": int(pts.shape[0]),
        "bbox_min": pts.min(axis=0),
        "bbox_max": pts.max(axis=0),
        "centroid": column_means(pts),
    }


def plane_section(plane: PlaneFit) -> dict:
    return {
        "normal": plane.normal,
        "offset": plane.offset,
        "rms_sq": plane.rms_sq,
        "eigenvalues": plane.eigenvalues,
        "centroid": plane.centroid,
        "unique": plane.unique,
    }


def result_section(res: CircleOrLine) -> dict:
    if res.kind == "circle":
        c = res.circle
        return {"tag": "circle", "center": c.center, "radius": c.radius, "rms_sq": c.rms_sq}
    ln = res.line
    return {
        "tag": "line",
        "anchor": ln.anchor,
        "direction": ln.direction,
        "eigenvalue_pair": ln.rms_sq_plane_pair,
    }


def diagnostics_section(res: CircleOrLine | None, plane: PlaneFit, options) -> dict:
    l1, l2, l3 = plane.eigenvalues
    if res is not None:
        decision = res.diagnostics.decision
    else:
        decision = "plane only"
    return {
        "mode": options.mode,
        "tau_line": options.tau_line,
        "tau_unique": options.tau_unique,
        "planarity_ratio": l1 / l3,
        "line_ratio": l2 / l3,
        "eigen_gap_ratio": (l2 - l1) / max(l3, plane.spread),
        "plane_unique": plane.unique,
        "line_threshold_hit": l2 <= options.tau_line * l3,
        "decision": decision,
    }

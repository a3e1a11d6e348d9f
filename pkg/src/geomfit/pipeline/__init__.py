"""End-to-end fitting, reporting, synthetic data and reference oracles."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..circle_fit import TAU_LINE, fit_circle
from ..errors import InvalidOptions
from ..plane_fit import TAU_UNIQUE, as_points, fit_plane
from .io import parse_points
from .oracle import oracle_circle, oracle_plane
from .report import FitReport, diagnostics_section, input_summary, plane_section, result_section
from .synth import SynthSpec, generate

MODES = ("auto", "plane", "circle", "line")


@dataclass(frozen=True)
class FitOptions:
    mode: str = "auto"
    tau_line: float = TAU_LINE
    tau_unique: float = TAU_UNIQUE

    def validate(self) -> None:
        if self.mode not in MODES:
            raise InvalidOptions(f"mode must be one of {MODES}", mode=self.mode)
        for name in ("tau_line", "tau_unique"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v) or v <= 0:
                raise InvalidOptions(f"{name} must be a positive finite number", **{name: v})

    @classmethod
    def from_dict(cls, data: dict) -> "FitOptions":
        unknown = sorted(set(data) - {"mode", "tau_line", "tau_unique"})
        if unknown:
            raise InvalidOptions(f"unknown options: {', '.join(unknown)}")
        opts = cls(**data)
        opts.validate()
        return opts

    def to_dict(self) -> dict:
        return {"mode": self.mode, "tau_line": self.tau_line, "tau_unique": self.tau_unique}


def run_fit(points, options: FitOptions | None = None) -> FitReport:
    """Fit the plane and, unless ``mode == "plane"``, the circle or line."""
    options = options or FitOptions()
    options.validate()
    pts = as_points(points)
    if options.mode == "plane":
        plane = fit_plane(pts, tau_unique=options.tau_unique)
        res = None
    else:
        res = fit_circle(pts, tau_line=options.tau_line, tau_unique=options.tau_unique,
                         mode=options.mode)
        plane = res.plane
    return FitReport(
        input=input_summary(pts),
        plane=plane_section(plane),
        result=None if res is None else result_section(res),
        diagnostics=diagnostics_section(res, plane, options),
    )


__all__ = [
    "FitOptions",
    "FitReport",
    "SynthSpec",
    "generate",
    "oracle_circle",
    "oracle_plane",
    "parse_points",
    "run_fit",
]

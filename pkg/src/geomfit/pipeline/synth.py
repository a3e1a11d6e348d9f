"""Seeded synthetic point sets on circles, lines and planes."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import InvalidSpec

PRIMITIVES = ("circle", "line", "plane")
SPACINGS = ("uniform", "random")


def _unit(v, what):
    v = np.asarray(v, dtype=float)
    n = float(np.linalg.norm(v))
    if v.shape != (3,) or not np.all(np.isfinite(v)) or n == 0.0:
        raise InvalidSpec(f"{what} must be a non-zero finite 3-vector")
    return v / n


def _frame(n):
    """Any orthonormal pair spanning the plane orthogonal to ``n``."""
    k = int(np.argmin(np.abs(n)))
    a = np.zeros(3)
    a[k] = 1.0
    u = a - np.dot(a, n) * n
    u /= np.linalg.norm(u)
    return u, np.cross(n, u)


@dataclass(frozen=True)
class SynthSpec:
    """Recipe for a synthetic point set.

    ``params`` depends on the primitive:

    * circle: ``center``, ``normal``, ``radius``
    * line: ``anchor``, ``direction``, ``length``
    * plane: ``point``, ``normal``, ``extent`` (half side of the sampled square)

    ``radial_sigma`` is noise within the carrier (radial for circles,
    perpendicular to the line for lines); ``out_of_plane_sigma`` is noise
    along the normal (circles and planes).
    """

    primitive: str
    n: int
    params: dict = field(default_factory=dict)
    radial_sigma: float = 0.0
    out_of_plane_sigma: float = 0.0
    seed: int = 0
    spacing: str = "uniform"

    def validate(self) -> None:
        if self.primitive not in PRIMITIVES:
            raise InvalidSpec(f"primitive must be one of {PRIMITIVES}", primitive=self.primitive)
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 3:
            raise InvalidSpec("n must be an integer >= 3", n=self.n)
        for name in ("radial_sigma", "out_of_plane_sigma"):
            s = getattr(self, name)
            if not (isinstance(s, (int, float)) and math.isfinite(s) and s >= 0):
                raise InvalidSpec(f"{name} must be a finite number >= 0", **{name: s})
        if self.spacing not in SPACINGS:
            raise InvalidSpec(f"spacing must be one of {SPACINGS}", spacing=self.spacing)
        if isinstance(self.seed, bool) or not isinstance(self.seed, int) or self.seed < 0:
            raise InvalidSpec("seed must be a non-negative integer", seed=self.seed)

    @classmethod
    def from_dict(cls, data: dict) -> "SynthSpec":
        if not isinstance(data, dict):
            raise InvalidSpec("spec must be a JSON object")
        allowed = {"primitive", "n", "params", "radial_sigma", "out_of_plane_sigma", "seed", "spacing"}
        unknown = sorted(set(data) - allowed)
        if unknown:
            raise InvalidSpec(f"unknown spec keys: {', '.join(unknown)}")
        if "primitive" not in data or "n" not in data:
            raise InvalidSpec("spec needs 'primitive' and 'n'")
        spec = cls(**data)
        spec.validate()
        return spec

    @classmethod
    def from_json(cls, text: str) -> "SynthSpec":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidSpec(f"invalid JSON: {exc.msg}") from None
        return cls.from_dict(data)


def _param(params, key, default=None):
    if key in params:
        return params[key]
    if default is None:
        raise InvalidSpec(f"missing parameter {key!r}")
    return default


def _positions(spec, rng, lo, hi, periodic):
    if spec.spacing == "random":
        return rng.uniform(lo, hi, spec.n)
    if periodic:
        return lo + (hi - lo) * np.arange(spec.n) / spec.n
    return np.linspace(lo, hi, spec.n)


def generate(spec: SynthSpec) -> np.ndarray:
    """Sample ``spec.n`` points of the primitive; same spec, same bytes."""
    spec.validate()
    rng = np.random.default_rng(spec.seed)
    p = spec.params

    if spec.primitive == "circle":
        center = np.asarray(_param(p, "center"), dtype=float)
        normal = _unit(_param(p, "normal", [0.0, 0.0, 1.0]), "normal")
        radius = float(_param(p, "radius"))
        if not (math.isfinite(radius) and radius > 0) or center.shape != (3,):
            raise InvalidSpec("circle needs a 3D center and a positive radius")
        u, v = _frame(normal)
        t = _positions(spec, rng, 0.0, 2 * math.pi, periodic=True)
        r = radius + spec.radial_sigma * rng.standard_normal(spec.n)
        h = spec.out_of_plane_sigma * rng.standard_normal(spec.n)
        return (center + (r * np.cos(t))[:, None] * u + (r * np.sin(t))[:, None] * v
                + h[:, None] * normal)

    if spec.primitive == "line":
        anchor = np.asarray(_param(p, "anchor"), dtype=float)
        direction = _unit(_param(p, "direction"), "direction")
        length = float(_param(p, "length", 1.0))
        if not (math.isfinite(length) and length > 0) or anchor.shape != (3,):
            raise InvalidSpec("line needs a 3D anchor and a positive length")
        u, v = _frame(direction)
        t = _positions(spec, rng, -0.5 * length, 0.5 * length, periodic=False)
        off = spec.radial_sigma * rng.standard_normal((spec.n, 2))
        return anchor + t[:, None] * direction + off[:, :1] * u + off[:, 1:] * v

    point = np.asarray(_param(p, "point", [0.0, 0.0, 0.0]), dtype=float)
    normal = _unit(_param(p, "normal"), "normal")
    extent = float(_param(p, "extent", 1.0))
    if not (math.isfinite(extent) and extent > 0) or point.shape != (3,):
        raise InvalidSpec("plane needs a 3D point and a positive extent")
    u, v = _frame(normal)
    st = rng.uniform(-extent, extent, (spec.n, 2))
    h = spec.out_of_plane_sigma * rng.standard_normal(spec.n)
    return point + st[:, :1] * u + st[:, 1:] * v + h[:, None] * normal

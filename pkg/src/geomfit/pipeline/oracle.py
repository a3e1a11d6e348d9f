"""Brute-force reference minimizers used to cross-check the closed-form fits.

These deliberately share no code with ``plane_fit``/``circle_fit``: the plane
oracle is a direction grid search with local refinement, the circle oracle is
Nelder-Mead with seeded restarts.
"""

from __future__ import annotations

import math
import os

import numpy as np
from scipy.optimize import minimize

from ..errors import DegenerateInput, TooFewPoints

HEMISPHERE_DIRECTIONS = 20000
REFINE_ROUNDS = 6
REFINE_GRID = 21
CIRCLE_RESTARTS = 20


def default_seed() -> int:
    return int(os.environ.get("GEOMFIT_SEED", "0"))


def hemisphere_directions(k: int) -> np.ndarray:
    """``k`` near-uniform unit vectors with z >= 0 (Fibonacci spiral)."""
    i = np.arange(k) + 0.5
    z = 1.0 - i / k
    phi = i * math.pi * (3.0 - math.sqrt(5.0))
    r = np.sqrt(1.0 - z * z)
    return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])


def _plane_objectives(pts: np.ndarray, dirs: np.ndarray) -> np.ndarray:
    proj = pts @ dirs.T
    offset = proj.mean(axis=0)
    dev = proj - offset
    return (dev * dev).mean(axis=0)


def _tangent_pair(n: np.ndarray):
    a = np.array([1.0, 0.0, 0.0]) if abs(n[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    t1 = a - np.dot(a, n) * n
    t1 /= np.linalg.norm(t1)
    return t1, np.cross(n, t1)


def oracle_plane(points, directions: int = HEMISPHERE_DIRECTIONS, rounds: int = REFINE_ROUNDS):
    """Grid-search minimizer of the mean squared point-to-plane distance.

    Each candidate normal gets its optimal offset (the mean projection).
    A hemisphere grid is followed by ``rounds`` of local tangent-plane grids,
    each shrunk by a factor of 10 around the incumbent.
    Returns ``(normal, offset, objective)``.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[0] < 3:
        raise TooFewPoints("the plane oracle needs at least 3 points")
    # translation does not change the objective; centering only helps precision
    shift = pts.mean(axis=0)
    x = pts - shift

    dirs = hemisphere_directions(directions)
    obj = _plane_objectives(x, dirs)
    best = dirs[int(np.argmin(obj))]
    best_obj = float(obj.min())

    half = 2.0 * math.sqrt(2.0 * math.pi / directions)
    offsets = np.linspace(-1.0, 1.0, REFINE_GRID)
    a, b = np.meshgrid(offsets, offsets, indexing="ij")
    a, b = a.ravel(), b.ravel()
    for _ in range(rounds):
        t1, t2 = _tangent_pair(best)
        cand = best[None, :] + half * (a[:, None] * t1[None, :] + b[:, None] * t2[None, :])
        cand /= np.linalg.norm(cand, axis=1)[:, None]
        obj = _plane_objectives(x, cand)
        k = int(np.argmin(obj))
        if obj[k] <= best_obj:
            best, best_obj = cand[k], float(obj[k])
        half *= 0.1

    proj = pts @ best
    offset = float(proj.mean())
    objective = float(np.mean((proj - offset) ** 2))
    return best, offset, objective


def _circle_objective_scaled(params, x):
    d = x - params[:2]
    dev = np.einsum("ij,ij->i", d, d) - max(params[2], 0.0)
    return float(np.mean(dev * dev))


def oracle_circle(points2d, seed: int | None = None, restarts: int = CIRCLE_RESTARTS):
    """Nelder-Mead minimizer of the mean squared algebraic circle deflection.

    Searches over (center_x, center_y, rho^2) with rho^2 clamped at zero,
    starting from ``restarts`` seeded random points around the centroid.
    The best result by (objective, restart index) wins.
    Returns ``(center, radius, objective)``.
    """
    pts = np.asarray(points2d, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 3:
        raise TooFewPoints("the circle oracle needs at least 3 two-dimensional points")
    shift = pts.mean(axis=0)
    scale = math.sqrt(float(np.mean(np.sum((pts - shift) ** 2, axis=1))))
    if scale == 0.0:
        raise DegenerateInput("points coincide")
    x = (pts - shift) / scale
    sv = np.linalg.svd(x, compute_uv=False)
    if sv[-1] <= 1e-10 * sv[0]:
        raise DegenerateInput("points are collinear; no circle is determined")

    rng = np.random.default_rng(default_seed() if seed is None else seed)
    # both must hold to stop; f is O(1) in normalized coordinates
    opts = {"xatol": 1e-10, "fatol": 1e-14, "maxiter": 5000, "maxfev": 10000}
    best = None
    for index in range(restarts):
        c0 = rng.normal(scale=0.5, size=2)
        q0 = float(np.mean(np.sum((x - c0) ** 2, axis=1)))
        start = np.array([c0[0], c0[1], q0])
        for _ in range(2):
            res = minimize(_circle_objective_scaled, start, args=(x,), method="Nelder-Mead", options=opts)
            start = res.x
        key = (float(res.fun), index)
        if best is None or key < best[0]:
            best = (key, res.x)

    params = best[1]
    center = shift + scale * params[:2]
    radius = scale * math.sqrt(max(params[2], 0.0))
    d = pts - center
    dev = np.sum(d * d, axis=1) - radius * radius
    return center, radius, float(np.mean(dev * dev))

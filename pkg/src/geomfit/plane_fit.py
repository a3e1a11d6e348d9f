"""Optimal root-mean-square plane of a 3D point set.

The mean squared point-to-plane distance, minimized over the offset for a
fixed unit normal n, equals the quadratic form Q(n, n) where Q is the
covariance of the points about their centroid (the "non-flatness form").
The best plane therefore passes through the centroid with normal along the
eigenvector of Q's smallest eigenvalue, and that eigenvalue is the residual.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateCloud, EmptyInput, InvalidInput, InvalidOptions, TooFewPoints
from .linalg3 import EigenDecomp3, SymForm3, dot, eigen_sym3, frozen, norm

TAU_UNIQUE = 1e-8
# centered RMS spread at or below this fraction of the coordinate magnitude
# is indistinguishable from rounding noise
COINCIDENT_REL = 1e-13


def as_points(points, dim: int = 3) -> np.ndarray:
    """Validate ``points`` as an (N, dim) array of finite floats."""
    arr = np.asarray(points, dtype=float)
    if arr.size == 0:
        raise EmptyInput("no points given")
    if arr.ndim == 1 and arr.shape[0] == dim:
        arr = arr.reshape(1, dim)
    if arr.ndim != 2 or arr.shape[1] != dim:
        raise InvalidInput(f"expected an (N, {dim}) array of points, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        bad = int(np.argwhere(~np.isfinite(arr))[0][0])
        raise InvalidInput("points must be finite", index=bad)
    return arr


def column_means(arr: np.ndarray) -> np.ndarray:
    """Correctly rounded per-column means (order-independent, reproducible)."""
    n = arr.shape[0]
    return np.array([math.fsum(arr[:, j]) / n for j in range(arr.shape[1])])


def _mean(values) -> float:
    values = np.asarray(values, dtype=float)
    return math.fsum(values) / values.shape[0]


@dataclass(frozen=True)
class PlaneFit:
    """Optimal plane (r . normal) = offset together with its diagnostics."""

    normal: np.ndarray
    offset: float
    rms_sq: float
    eigenvalues: tuple
    centroid: np.ndarray
    unique: bool
    decomposition: EigenDecomp3
    spread: float  # trace of the non-flatness form, mean squared distance to centroid

    def distance(self, point) -> float:
        """Signed distance of ``point`` from the plane."""
        return dot(point, self.normal) - self.offset


def centroid(points) -> np.ndarray:
    """Arithmetic mean of the points."""
    pts = as_points(points)
    return frozen(column_means(pts))


def _second_moments(centered: np.ndarray) -> SymForm3:
    n = centered.shape[0]
    m = [[math.fsum(centered[:, j] * centered[:, k]) / n for k in range(3)] for j in range(3)]
    return SymForm3(m[0][0], m[0][1], m[0][2], m[1][1], m[1][2], m[2][2])


def nonflatness_form(points) -> SymForm3:
    """Covariance matrix (1/N) sum (r - r_cm)(r - r_cm)^T of the points.

    Its value at a unit normal n is the mean squared distance to the best
    plane with that normal.
    """
    pts = as_points(points)
    return _second_moments(pts - column_means(pts))


def inertia_form(points) -> SymForm3:
    """Inertia tensor of unit masses at the points, about their centroid.

    I(n, n) = sum |r - r_cm|^2 |n|^2 - sum ((r - r_cm) . n)^2
    """
    pts = as_points(points)
    x = pts - column_means(pts)
    s = math.fsum((x * x).ravel())
    m = [[math.fsum(x[:, j] * x[:, k]) for k in range(3)] for j in range(3)]
    return SymForm3(
        s - m[0][0], -m[0][1], -m[0][2],
        s - m[1][1], -m[1][2],
        s - m[2][2],
    )


def plane_objective(points, normal, offset: float) -> float:
    """Mean squared distance (1/N) sum ((r . n) - D)^2 to the given plane."""
    pts = as_points(points)
    normal = np.asarray(normal, dtype=float)
    if abs(norm(normal) - 1.0) > 1e-12:
        raise InvalidInput("normal must be a unit vector", norm=norm(normal))
    d = pts @ normal - offset
    return _mean(d * d)


def check_not_coincident(pts: np.ndarray, spread: float) -> None:
    magnitude = float(np.max(np.abs(pts)))
    if not math.sqrt(max(spread, 0.0)) > COINCIDENT_REL * magnitude:
        raise DegenerateCloud("all points coincide", spread=spread)


def fit_plane(points, tau_unique: float = TAU_UNIQUE) -> PlaneFit:
    """Optimal RMS plane of at least three points.

    The plane passes through the centroid; its normal is the eigenvector of
    the smallest eigenvalue of the non-flatness form. ``unique`` is False
    when that eigenvalue is not separated from the next one by more than
    ``tau_unique * max(lambda_3, spread)``; a deterministic normal is still
    returned in that case.
    """
    if not (math.isfinite(tau_unique) and tau_unique > 0):
        raise InvalidOptions("tau_unique must be a positive finite number", tau_unique=tau_unique)
    pts = as_points(points)
    n = pts.shape[0]
    if n < 3:
        raise TooFewPoints(f"a plane fit needs at least 3 points, got {n}", n=n)

    r_cm = column_means(pts)
    x = pts - r_cm
    q = _second_moments(x)
    spread = q.trace()
    check_not_coincident(pts, spread)

    dec = eigen_sym3(q)
    _, l2, l3 = dec.values
    normal = dec.vectors[0]
    # Q(n, n) summed from the data: rounding in the stored matrix entries limits
    # the Jacobi eigenvalue to ~eps * lambda_3 absolute, this is second order
    h = x @ normal
    l1 = min(_mean(h * h), l2)
    return PlaneFit(
        normal=normal,
        offset=dot(r_cm, normal),
        rms_sq=l1,
        eigenvalues=(l1, l2, l3),
        centroid=frozen(r_cm),
        unique=bool(l2 - l1 > tau_unique * max(l3, spread)),
        decomposition=dec,
        spread=spread,
    )

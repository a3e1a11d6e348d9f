"""Algebraic circle fit on the optimal plane, with a straight-line fallback.

The circle objective is the mean squared deflection (|r - R|^2 - rho^2)^2.
Eliminating rho^2 leaves a quadratic in the center R,

    d^2 = 4 Q(R, R) - 4 (L, R) + M,

whose minimizer solves 2 Q R = L. For points lying in a plane Q is singular,
so the solve happens in 2D coordinates of the fitted plane. When the cloud is
(nearly) one-dimensional the 2D system degenerates too and the best line
through the centroid is returned instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DegenerateSystem, InvalidInput, InvalidOptions, TooFewPoints
from .linalg3 import (
    EigenDecomp3,
    SymForm2,
    SymForm3,
    cross,
    eigen_sym3,
    frozen,
    norm,
    normalize,
    plane_basis,
    solve_sym2,
)
from .plane_fit import (
    TAU_UNIQUE,
    PlaneFit,
    _mean,
    _second_moments,
    as_points,
    check_not_coincident,
    column_means,
    fit_plane,
)

TAU_LINE = 1e-6
MODES = ("auto", "circle", "line")


@dataclass(frozen=True)
class CircleMoments:
    """Coefficients of d^2(R) = 4 Q(R, R) - 4 (L, R) + M about ``origin``."""

    q: SymForm2 | SymForm3
    l: np.ndarray
    m: float
    origin: np.ndarray

    def objective(self, center) -> float:
        """Evaluate the quadratic form at ``center`` (given relative to ``origin``)."""
        center = np.asarray(center, dtype=float)
        return 4.0 * self.q.value(center) - 4.0 * float(np.dot(self.l, center)) + self.m


@dataclass(frozen=True)
class CircleFit:
    center: np.ndarray
    radius: float
    rms_sq: float
    plane: PlaneFit
    basis: tuple
    center2d: np.ndarray


@dataclass(frozen=True)
class LineFit:
    anchor: np.ndarray
    direction: np.ndarray
    rms_sq_plane_pair: tuple


@dataclass(frozen=True)
class Diagnostics:
    mode: str
    tau_line: float
    tau_unique: float
    eigenvalues: tuple
    planarity_ratio: float  # lambda_1 / lambda_3
    line_ratio: float  # lambda_2 / lambda_3
    eigen_gap_ratio: float  # (lambda_2 - lambda_1) / max(lambda_3, spread)
    plane_unique: bool
    decision: str


@dataclass(frozen=True)
class CircleOrLine:
    kind: str
    diagnostics: Diagnostics
    plane: PlaneFit
    circle: Optional[CircleFit] = None
    line: Optional[LineFit] = None

    @property
    def fit(self):
        return self.circle if self.kind == "circle" else self.line


def project_to_plane(points, plane) -> np.ndarray:
    """Orthogonal projection r -> r - ((r . n) - D) n onto ``plane``."""
    pts = as_points(points)
    n = np.asarray(plane.normal, dtype=float)
    if abs(norm(n) - 1.0) > 1e-12:
        raise InvalidInput("plane normal must be a unit vector")
    dev = pts @ n - plane.offset
    return pts - dev[:, None] * n[None, :]


def circle_moments(points, origin=None) -> CircleMoments:
    """Q, L and M of the circle objective, with coordinates taken about ``origin``.

    ``origin`` defaults to the centroid, which keeps the |r|^2 weights small for
    clouds far from the coordinate origin. Works for 2D or 3D points.
    """
    pts = np.asarray(points, dtype=float)
    dim = pts.shape[1] if pts.ndim == 2 else 0
    if dim not in (2, 3):
        raise InvalidInput(f"expected (N, 2) or (N, 3) points, got shape {pts.shape}")
    pts = as_points(pts, dim)
    n = pts.shape[0]
    if n < 3:
        raise TooFewPoints(f"circle moments need at least 3 points, got {n}", n=n)

    origin = column_means(pts) if origin is None else np.asarray(origin, dtype=float)
    x = pts - origin
    x_cm = column_means(x)
    xc = x - x_cm
    r2 = np.einsum("ij,ij->i", x, x)

    cov = [[math.fsum(xc[:, j] * xc[:, k]) / n for k in range(dim)] for j in range(dim)]
    if dim == 2:
        q = SymForm2(cov[0][0], cov[0][1], cov[1][1])
    else:
        q = SymForm3(cov[0][0], cov[0][1], cov[0][2], cov[1][1], cov[1][2], cov[2][2])
    l = np.array([_mean(r2 * xc[:, j]) for j in range(dim)])
    mean_r2 = _mean(r2)
    m = _mean(r2 * r2) - mean_r2 * mean_r2
    return CircleMoments(q, frozen(l), m, frozen(origin))


def solve_center(q2: SymForm2, l2) -> np.ndarray:
    """Center R solving 2 Q R = L; raises DegenerateSystem for collinear moments."""
    return solve_sym2(q2.scaled(2.0), l2)


def radius_from_center(points2d, center2d) -> float:
    """sqrt of the mean squared distance to ``center2d`` (the optimal rho for that center)."""
    pts = np.asarray(points2d, dtype=float)
    if pts.ndim == 1:
        pts = pts.reshape(1, -1)
    d = pts - np.asarray(center2d, dtype=float)
    return math.sqrt(_mean(np.einsum("ij,ij->i", d, d)))


def circle_objective(points2d, center2d, radius: float) -> float:
    """Mean squared algebraic deflection (1/N) sum (|r - R|^2 - rho^2)^2."""
    if radius < 0:
        raise InvalidInput("radius must be non-negative", radius=radius)
    pts = np.asarray(points2d, dtype=float)
    if pts.ndim == 1:
        pts = pts.reshape(1, -1)
    d = pts - np.asarray(center2d, dtype=float)
    dev = np.einsum("ij,ij->i", d, d) - radius * radius
    return _mean(dev * dev)


def fit_line(points, decomp: Optional[EigenDecomp3] = None) -> LineFit:
    """Line through the centroid where the two flattest eigen-planes intersect.

    The planes (r . n_k) = (r_cm . n_k) for the two smallest eigenvalues
    meet along n_1 x n_2, which is the principal direction of the cloud.
    """
    pts = as_points(points)
    if pts.shape[0] < 2:
        raise TooFewPoints(f"a line fit needs at least 2 points, got {pts.shape[0]}", n=pts.shape[0])
    r_cm = column_means(pts)
    if decomp is None:
        q = _second_moments(pts - r_cm)
        check_not_coincident(pts, q.trace())
        decomp = eigen_sym3(q)
    else:
        check_not_coincident(pts, sum(decomp.values))
    n1, n2 = decomp.vectors[0], decomp.vectors[1]
    direction = normalize(cross(n1, n2))
    return LineFit(
        anchor=frozen(r_cm),
        direction=frozen(direction),
        rms_sq_plane_pair=(decomp.values[0], decomp.values[1]),
    )


def _diagnostics(plane: PlaneFit, mode, tau_line, tau_unique, decision) -> Diagnostics:
    l1, l2, l3 = plane.eigenvalues
    return Diagnostics(
        mode=mode,
        tau_line=tau_line,
        tau_unique=tau_unique,
        eigenvalues=plane.eigenvalues,
        planarity_ratio=l1 / l3,
        line_ratio=l2 / l3,
        eigen_gap_ratio=(l2 - l1) / max(l3, plane.spread),
        plane_unique=plane.unique,
        decision=decision,
    )


def _check_tau(name, value):
    if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
        raise InvalidOptions(f"{name} must be a positive finite number", **{name: value})


def fit_circle(points, tau_line: float = TAU_LINE, tau_unique: float = TAU_UNIQUE,
               mode: str = "auto") -> CircleOrLine:
    """Fit the optimal plane, then the optimal circle in it (or a line).

    In ``auto`` mode a line is returned when lambda_2 <= tau_line * lambda_3
    for the 3D non-flatness form, or when the 2D center equation turns out
    singular. ``circle`` mode skips the eigenvalue test and lets a singular
    system raise; ``line`` mode always fits the line.
    """
    _check_tau("tau_line", tau_line)
    _check_tau("tau_unique", tau_unique)
    if mode not in MODES:
        raise InvalidOptions(f"mode must be one of {MODES}", mode=mode)

    pts = as_points(points)
    plane = fit_plane(pts, tau_unique=tau_unique)
    l1, l2, l3 = plane.eigenvalues

    def line_result(decision):
        diag = _diagnostics(plane, mode, tau_line, tau_unique, decision)
        return CircleOrLine("line", diag, plane, line=fit_line(pts, plane.decomposition))

    if mode == "line":
        return line_result("line: forced by mode")
    if mode == "auto" and l2 <= tau_line * l3:
        return line_result("line: lambda_2/lambda_3 <= tau_line")

    projected = project_to_plane(pts, plane)
    e1, e2 = plane_basis(plane.normal)
    rel = projected - plane.centroid
    uv = np.column_stack([rel @ e1, rel @ e2])

    mom = circle_moments(uv)
    try:
        c = solve_center(mom.q, mom.l)
    except DegenerateSystem:
        if mode == "circle":
            raise
        return line_result("line: singular 2D center system")
    center2d = mom.origin + c
    radius = radius_from_center(uv, center2d)
    center = plane.centroid + center2d[0] * e1 + center2d[1] * e2

    circle = CircleFit(
        center=frozen(center),
        radius=radius,
        rms_sq=circle_objective(uv, center2d, radius),
        plane=plane,
        basis=(e1, e2),
        center2d=frozen(center2d),
    )
    decision = "circle: forced by mode" if mode == "circle" else "circle"
    diag = _diagnostics(plane, mode, tau_line, tau_unique, decision)
    return CircleOrLine("circle", diag, plane, circle=circle)


def plane_coordinates(points, plane: PlaneFit) -> np.ndarray:
    """2D coordinates of the projected points in the frame used by fit_circle."""
    e1, e2 = plane_basis(plane.normal)
    rel = project_to_plane(points, plane) - plane.centroid
    return np.column_stack([rel @ e1, rel @ e2])


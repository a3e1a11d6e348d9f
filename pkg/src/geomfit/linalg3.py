"""Small dense linear algebra for 3-vectors and 2x2 / 3x3 symmetric forms.

The eigen-solver is a cyclic Jacobi iteration written against plain floats so
that results are bit-for-bit reproducible for identical input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DegenerateSystem, InvalidInput

EPS_RANK = 1e-10
JACOBI_TOL = 1e-14
JACOBI_MAX_SWEEPS = 64

_PAIRS = ((0, 1), (0, 2), (1, 2))


def frozen(a) -> np.ndarray:
    """Return a read-only float64 copy of ``a``."""
    out = np.array(a, dtype=float)
    out.setflags(write=False)
    return out


def cross(a, b) -> np.ndarray:
    return np.array([
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ])


def dot(a, b) -> float:
    return float(a[0] * b[0] + a[1] * b[1] + a[2] * b[2])


def norm(a) -> float:
    return math.sqrt(math.fsum(float(x) * float(x) for x in a))


def normalize(a) -> np.ndarray:
    n = norm(a)
    if n == 0.0:
        raise InvalidInput("cannot normalize a zero vector")
    return np.asarray(a, dtype=float) / n


@dataclass(frozen=True)
class SymForm3:
    """Symmetric 3x3 matrix stored by its six independent entries."""

    xx: float
    xy: float
    xz: float
    yy: float
    yz: float
    zz: float

    @classmethod
    def from_matrix(cls, a) -> "SymForm3":
        a = np.asarray(a, dtype=float)
        if a.shape != (3, 3):
            raise InvalidInput(f"expected a 3x3 matrix, got shape {a.shape}")
        # average the mirrored entries so slightly asymmetric input is accepted
        return cls(
            float(a[0, 0]),
            0.5 * (float(a[0, 1]) + float(a[1, 0])),
            0.5 * (float(a[0, 2]) + float(a[2, 0])),
            float(a[1, 1]),
            0.5 * (float(a[1, 2]) + float(a[2, 1])),
            float(a[2, 2]),
        )

    def matrix(self) -> np.ndarray:
        return np.array([
            [self.xx, self.xy, self.xz],
            [self.xy, self.yy, self.yz],
            [self.xz, self.yz, self.zz],
        ])

    def apply(self, v) -> np.ndarray:
        """The associated symmetric operator applied to ``v``."""
        return self.matrix() @ np.asarray(v, dtype=float)

    def value(self, v, w=None) -> float:
        """Bilinear value A(v, w); the quadratic value A(v, v) if ``w`` is omitted."""
        w = v if w is None else w
        return float(np.dot(self.apply(v), np.asarray(w, dtype=float)))

    def trace(self) -> float:
        return self.xx + self.yy + self.zz

    def det(self) -> float:
        return float(
            self.xx * (self.yy * self.zz - self.yz * self.yz)
            - self.xy * (self.xy * self.zz - self.yz * self.xz)
            + self.xz * (self.xy * self.yz - self.yy * self.xz)
        )

    def frobenius(self) -> float:
        return math.sqrt(math.fsum([
            self.xx ** 2, self.yy ** 2, self.zz ** 2,
            2 * self.xy ** 2, 2 * self.xz ** 2, 2 * self.yz ** 2,
        ]))

    def is_finite(self) -> bool:
        return all(math.isfinite(x) for x in (self.xx, self.xy, self.xz, self.yy, self.yz, self.zz))


@dataclass(frozen=True)
class SymForm2:
    """Symmetric 2x2 matrix stored by its three independent entries."""

    xx: float
    xy: float
    yy: float

    @classmethod
    def from_matrix(cls, a) -> "SymForm2":
        a = np.asarray(a, dtype=float)
        if a.shape != (2, 2):
            raise InvalidInput(f"expected a 2x2 matrix, got shape {a.shape}")
        return cls(float(a[0, 0]), 0.5 * (float(a[0, 1]) + float(a[1, 0])), float(a[1, 1]))

    def matrix(self) -> np.ndarray:
        return np.array([[self.xx, self.xy], [self.xy, self.yy]])

    def apply(self, v) -> np.ndarray:
        return np.array([self.xx * v[0] + self.xy * v[1], self.xy * v[0] + self.yy * v[1]])

    def value(self, v, w=None) -> float:
        w = v if w is None else w
        av = self.apply(v)
        return float(av[0] * w[0] + av[1] * w[1])

    def trace(self) -> float:
        return self.xx + self.yy

    def det(self) -> float:
        return self.xx * self.yy - self.xy * self.xy

    def frobenius(self) -> float:
        return math.sqrt(math.fsum([self.xx ** 2, self.yy ** 2, 2 * self.xy ** 2]))

    def scaled(self, s: float) -> "SymForm2":
        return SymForm2(s * self.xx, s * self.xy, s * self.yy)


@dataclass(frozen=True)
class EigenDecomp3:
    """Ascending eigenvalues and matching orthonormal eigenvectors.

    ``vectors[k]`` is the unit eigenvector for ``values[k]``; the three rows
    form a right-handed frame.
    """

    values: tuple
    vectors: np.ndarray
    sweeps: int = 0

    def vector(self, k: int) -> np.ndarray:
        return self.vectors[k]


def _off_norm(a) -> float:
    return math.sqrt(2.0 * (a[0][1] ** 2 + a[0][2] ** 2 + a[1][2] ** 2))


def _rotate(a, v, p: int, q: int) -> None:
    """One Jacobi rotation annihilating a[p][q], applied in place."""
    apq = a[p][q]
    if apq == 0.0:
        return
    theta = (a[q][q] - a[p][p]) / (2.0 * apq)
    if abs(theta) > 1e150:
        t = 0.5 / theta
    else:
        t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
    c = 1.0 / math.sqrt(t * t + 1.0)
    s = t * c

    a[p][p] -= t * apq
    a[q][q] += t * apq
    a[p][q] = a[q][p] = 0.0
    r = 3 - p - q
    arp, arq = a[r][p], a[r][q]
    a[r][p] = a[p][r] = c * arp - s * arq
    a[r][q] = a[q][r] = s * arp + c * arq

    for k in range(3):
        vkp, vkq = v[k][p], v[k][q]
        v[k][p] = c * vkp - s * vkq
        v[k][q] = s * vkp + c * vkq


def _orient(vec: list) -> list:
    """Flip ``vec`` so its largest-magnitude component is positive (ties: lowest index)."""
    k = 0
    for i in (1, 2):
        if abs(vec[i]) > abs(vec[k]):
            k = i
    return vec if vec[k] >= 0.0 else [-x for x in vec]


def eigen_sym3(form: SymForm3) -> EigenDecomp3:
    """Eigen-decomposition of a symmetric 3x3 form by cyclic Jacobi sweeps.

    Sweeps run over the pairs (0,1), (0,2), (1,2) until the off-diagonal
    Frobenius norm drops to ``JACOBI_TOL`` times the Frobenius norm of the
    input. Eigenvalues come back ascending (stable w.r.t. column order on
    exact ties). The first two eigenvectors get the largest-component-positive
    sign convention and the third is oriented to make the frame right-handed.
    """
    if not form.is_finite():
        raise InvalidInput("symmetric form has non-finite entries")
    a = [list(row) for row in form.matrix().tolist()]
    v = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
    tol = JACOBI_TOL * form.frobenius()

    sweeps = 0
    while _off_norm(a) > tol:
        if sweeps == JACOBI_MAX_SWEEPS:
            raise ConvergenceError(
                "Jacobi iteration did not converge",
                off_diagonal_norm=_off_norm(a),
                sweeps=sweeps,
            )
        for p, q in _PAIRS:
            _rotate(a, v, p, q)
        sweeps += 1

    order = sorted(range(3), key=lambda k: a[k][k])
    values = tuple(float(a[k][k]) for k in order)
    cols = [[v[0][k], v[1][k], v[2][k]] for k in order]
    v1 = _orient(cols[0])
    v2 = _orient(cols[1])
    v3 = cols[2]
    if dot(cross(v1, v2), v3) < 0.0:
        v3 = [-x for x in v3]
    return EigenDecomp3(values, frozen([v1, v2, v3]), sweeps)


def solve_sym2(form: SymForm2, b) -> np.ndarray:
    """Solve ``form @ x = b``.

    Raises DegenerateSystem when |det| <= EPS_RANK * ||A||_F^2, which for a
    symmetric 2x2 matrix bounds the ratio of its eigenvalue magnitudes.
    """
    b = np.asarray(b, dtype=float)
    scale = form.frobenius() ** 2
    det = form.det()
    if not abs(det) > EPS_RANK * scale:
        raise DegenerateSystem(
            "2x2 system is singular under the rank tolerance",
            det=det,
            frobenius_sq=scale,
        )

    def cramer(rhs):
        return np.array([
            (form.yy * rhs[0] - form.xy * rhs[1]) / det,
            (form.xx * rhs[1] - form.xy * rhs[0]) / det,
        ])

    x = cramer(b)
    # one step of iterative refinement
    x = x + cramer(b - form.apply(x))
    return x


def plane_basis(n) -> tuple[np.ndarray, np.ndarray]:
    """Right-handed in-plane frame (e1, e2) for the unit normal ``n``.

    e1 is the normalized projection of the global axis least aligned with
    ``n`` (ties go to the lowest axis index) and e2 = n x e1.
    """
    n = np.asarray(n, dtype=float)
    if abs(norm(n) - 1.0) > 1e-12:
        raise InvalidInput("plane_basis needs a unit normal", norm=norm(n))
    k = 0
    for i in (1, 2):
        if abs(n[i]) < abs(n[k]):
            k = i
    axis = np.zeros(3)
    axis[k] = 1.0
    e1 = normalize(axis - n[k] * n)
    e2 = cross(n, e1)
    return frozen(e1), frozen(e2)

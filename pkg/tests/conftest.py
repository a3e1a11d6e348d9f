import numpy as np
import pytest


def random_rotation(rng):
    """Haar-ish random rotation via QR of a Gaussian matrix, det = +1."""
    q, r = np.linalg.qr(rng.standard_normal((3, 3)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def random_cloud(rng, n_lo=4, n_hi=60, lo=-5.0, hi=5.0):
    n = int(rng.integers(n_lo, n_hi + 1))
    return rng.uniform(lo, hi, (n, 3))


def scale_of(points):
    """RMS centered spread of a cloud."""
    x = np.asarray(points) - np.mean(points, axis=0)
    return float(np.sqrt(np.mean(np.sum(x * x, axis=1))))


def circle_points(center, normal, radius, n, phase=0.0):
    normal = np.asarray(normal, float) / np.linalg.norm(normal)
    a = np.array([1.0, 0.0, 0.0]) if abs(normal[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    u = a - normal * np.dot(a, normal)
    u /= np.linalg.norm(u)
    v = np.cross(normal, u)
    t = phase + 2 * np.pi * np.arange(n) / n
    return np.asarray(center, float) + radius * (np.cos(t)[:, None] * u + np.sin(t)[:, None] * v)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)

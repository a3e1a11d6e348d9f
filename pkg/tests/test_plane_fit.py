import numpy as np
import pytest

from geomfit.errors import DegenerateCloud, EmptyInput, InvalidOptions, TooFewPoints
from geomfit.linalg3 import eigen_sym3
from geomfit.pipeline.oracle import oracle_plane
from geomfit.plane_fit import (
    centroid,
    fit_plane,
    inertia_form,
    nonflatness_form,
    plane_objective,
)

from conftest import random_cloud, random_rotation, scale_of

SQUARE = np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0]], float)
CUBE = np.array([[x, y, z] for x in (0, 1) for y in (0, 1) for z in (0, 1)], float)


def variance_form(points, n):
    """Mean of squared projections minus squared mean projection."""
    p = np.asarray(points) @ n
    return np.mean(p * p) - np.mean(p) ** 2


@pytest.mark.parametrize("points, expected", [
    ([[1, 2, 3]], [1, 2, 3]),
    (SQUARE * 2, [1, 1, 0]),
    (np.eye(3), [1 / 3, 1 / 3, 1 / 3]),
])
def test_centroid(points, expected):
    assert np.allclose(centroid(points), expected, rtol=0, atol=1e-15)


def test_centroid_empty():
    with pytest.raises(EmptyInput):
        centroid(np.zeros((0, 3)))


def test_nonflatness_examples():
    assert np.array_equal(nonflatness_form([[4, 5, 6]]).matrix(), np.zeros((3, 3)))
    assert np.array_equal(nonflatness_form([[1, 0, 0], [-1, 0, 0]]).matrix(), np.diag([1.0, 0, 0]))
    cross4 = [[1, 0, 0], [0, 1, 0], [-1, 0, 0], [0, -1, 0]]
    assert np.allclose(nonflatness_form(cross4).matrix(), np.diag([0.5, 0.5, 0]), atol=1e-16)


def test_nonflatness_value_matches_definition(rng):
    pts = random_cloud(rng)
    q = nonflatness_form(pts)
    for _ in range(20):
        n = rng.standard_normal(3)
        assert q.value(n) == pytest.approx(variance_form(pts, n), rel=1e-9, abs=1e-12)
    assert np.all(np.linalg.eigvalsh(q.matrix()) >= -1e-12)


def test_inertia_examples():
    assert np.array_equal(inertia_form([[1, 1, 1]]).matrix(), np.zeros((3, 3)))
    rod = inertia_form([[1, 0, 0], [-1, 0, 0]])
    assert rod.value([1, 0, 0]) == 0
    assert rod.value([0, 1, 0]) == 2
    assert rod.trace() == 4


def test_inertia_identity_against_objective(rng):
    # Q(n, n) = tr(I)/(2N) |n|^2 - I(n, n)/N, each side evaluated on its own
    pts = rng.uniform(-5, 5, (10, 3))
    inertia = inertia_form(pts)
    n_pts = len(pts)
    x = pts - pts.mean(axis=0)
    assert inertia.trace() == pytest.approx(2 * np.sum(x * x), rel=1e-12)
    for _ in range(100):
        n = rng.standard_normal(3)
        lhs = variance_form(pts, n)
        rhs = inertia.trace() / (2 * n_pts) * np.dot(n, n) - inertia.value(n) / n_pts
        assert rhs == pytest.approx(lhs, rel=1e-10)


def test_fit_plane_square():
    fit = fit_plane(SQUARE)
    assert np.array_equal(fit.normal, [0, 0, 1])
    assert fit.offset == 0 and fit.rms_sq == 0 and fit.unique


def test_fit_plane_translated_square():
    fit = fit_plane(SQUARE + [0, 0, 5])
    assert np.array_equal(fit.normal, [0, 0, 1])
    assert fit.offset == pytest.approx(5, abs=1e-15)
    assert fit.rms_sq == pytest.approx(0, abs=1e-15)


def test_fit_plane_cube_is_not_unique():
    fit = fit_plane(CUBE)
    assert fit.eigenvalues == pytest.approx((0.25, 0.25, 0.25), abs=1e-15)
    assert fit.rms_sq == pytest.approx(0.25, abs=1e-15)
    assert not fit.unique
    assert np.count_nonzero(fit.normal) == 1
    assert plane_objective(CUBE, fit.normal, fit.offset) == pytest.approx(0.25, abs=1e-15)


def test_fit_plane_sine_sheet_matches_oracle():
    rng = np.random.default_rng(11)
    xy = rng.uniform(-2, 2, (20, 2))
    pts = np.column_stack([xy, 0.1 * np.sin(2.0 * xy[:, 0] + xy[:, 1])])
    fit = fit_plane(pts)
    _, _, best = oracle_plane(pts)
    assert abs(fit.rms_sq - best) <= 1e-8


def test_fit_plane_errors():
    with pytest.raises(EmptyInput):
        fit_plane([])
    with pytest.raises(TooFewPoints):
        fit_plane([[0, 0, 0], [1, 0, 0]])
    with pytest.raises(DegenerateCloud):
        fit_plane([[1, 2, 3]] * 5)
    with pytest.raises(DegenerateCloud):
        fit_plane([[1e8, 1e8, 1e8]] * 4)
    with pytest.raises(InvalidOptions):
        fit_plane(SQUARE, tau_unique=0)


def test_plane_objective_examples():
    assert plane_objective(SQUARE, [0, 0, 1], 0.0) == 0
    assert plane_objective(SQUARE, [0, 0, 1], 1.0) == 1


def test_plane_objective_two_formulas(rng):
    for _ in range(50):
        pts = random_cloud(rng)
        n = rng.standard_normal(3)
        n /= np.linalg.norm(n)
        d = float(np.mean(pts @ n))
        assert plane_objective(pts, n, d) == pytest.approx(variance_form(pts, n), rel=1e-10, abs=1e-14)


def test_fit_plane_invariants(rng):
    for _ in range(200):
        pts = random_cloud(rng)
        fit = fit_plane(pts)
        l1, l2, l3 = fit.eigenvalues
        assert abs(np.linalg.norm(fit.normal) - 1) <= 1e-12
        assert fit.rms_sq == l1
        assert fit.offset == pytest.approx(np.dot(fit.centroid, fit.normal), rel=1e-10, abs=1e-12)
        assert fit.rms_sq >= -1e-12
        direct = plane_objective(pts, fit.normal, fit.offset)
        assert direct == pytest.approx(fit.rms_sq, rel=1e-10, abs=1e-12 * l3)


def test_fit_plane_beats_random_probes():
    rng = np.random.default_rng(77)
    for _ in range(200):
        pts = random_cloud(rng)
        fit = fit_plane(pts)
        probes = rng.standard_normal((1000, 3))
        probes /= np.linalg.norm(probes, axis=1)[:, None]
        proj = pts @ probes.T
        probe_obj = np.mean((proj - proj.mean(axis=0)) ** 2, axis=0)
        assert fit.rms_sq <= probe_obj.min() + 1e-12 * scale_of(pts) ** 2


def test_fit_plane_rigid_motion(rng):
    for _ in range(100):
        pts = random_cloud(rng)
        r = random_rotation(rng)
        t = rng.uniform(-100, 100, 3)
        a, b = fit_plane(pts), fit_plane(pts @ r.T + t)
        assert abs(np.dot(b.normal, r @ a.normal)) >= 1 - 1e-9
        assert b.rms_sq == pytest.approx(a.rms_sq, rel=1e-9, abs=1e-12 * a.eigenvalues[2])


@pytest.mark.parametrize("s", [1e-3, 0.5, 7.0, 1e4])
def test_fit_plane_scale(rng, s):
    pts = random_cloud(rng)
    a, b = fit_plane(pts), fit_plane(s * pts)
    assert b.rms_sq == pytest.approx(s * s * a.rms_sq, rel=1e-9)
    assert abs(np.dot(a.normal, b.normal)) >= 1 - 1e-12
    assert abs(b.offset) == pytest.approx(s * abs(a.offset), rel=1e-9, abs=1e-12 * s)


def test_fit_plane_far_from_origin():
    rng = np.random.default_rng(8)
    local = rng.uniform(-1, 1, (30, 3)) * [1, 1, 0.01]
    a = fit_plane(local)
    b = fit_plane(local + 1e6)
    assert abs(np.dot(a.normal, b.normal)) >= 1 - 1e-9
    assert b.rms_sq == pytest.approx(a.rms_sq, rel=1e-6)


def test_fit_plane_uses_its_own_decomposition(rng):
    pts = random_cloud(rng)
    fit = fit_plane(pts)
    dec = eigen_sym3(nonflatness_form(pts))
    assert fit.eigenvalues[1:] == dec.values[1:]
    assert fit.eigenvalues[0] == pytest.approx(dec.values[0], abs=1e-14 * dec.values[2])

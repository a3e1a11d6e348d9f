"""Closed-form least-squares plane, circle and line fitting for 3D points."""

from .circle_fit import (
    CircleFit,
    CircleOrLine,
    LineFit,
    circle_moments,
    circle_objective,
    fit_circle,
    fit_line,
    project_to_plane,
    radius_from_center,
    solve_center,
)
from .errors import (
    DegenerateCloud,
    DegenerateInput,
    DegenerateSystem,
    EmptyInput,
    GeomFitError,
    InvalidOptions,
    ParseError,
    TooFewPoints,
)
from .linalg3 import EigenDecomp3, SymForm2, SymForm3, eigen_sym3, plane_basis, solve_sym2
from .plane_fit import PlaneFit, centroid, fit_plane, inertia_form, nonflatness_form, plane_objective

__version__ = "0.1.0"

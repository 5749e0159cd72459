"""Geometry of the order-p Wasserstein space over finitely supported measures on R^d.

Exact discrete optimal transport, displacement geodesics carried by
segment families, ray measures and their validation, the co-ray limit
construction, and Busemann functions with monotone convergence
certificates, plus a seeded verification harness and a CLI.
"""

from .busemann import BusemannEstimate, LipschitzReport, busemann_value, lipschitz_check
from .coray import (
    CorayResult,
    GradientReport,
    SubadditivityReport,
    SubrayReport,
    ViscosityReport,
    busemann_subadditivity_check,
    construct_coray,
    coray_gradient_check,
    subray_uniqueness_check,
    viscosity_check,
)
from .errors import (
    DimensionMismatchError,
    EmptyMeasureError,
    InvalidExponentError,
    MarginalMismatchError,
    MeasureFileError,
    MonotonicityError,
    NonOptimalCouplingError,
    UnitSpeedError,
)
from .euclidean import AmbientRay, distance, interpolate, polyline_length, ray_point
from .io import read_measure, read_ray, write_measure, write_ray
from .measures import DiscreteMeasure, dirac, merge_atoms, same_measure, uniform_measure
from .ot import (
    Coupling,
    TailBoundReport,
    brute_force_ot,
    solve_ot,
    tail_mass_bound_check,
    wasserstein_distance,
)
from .paths import (
    GeodesicLift,
    RayMeasure,
    RayValidationReport,
    glue,
    lift_geodesic,
    make_dirac_ray,
    make_translation_ray,
    ray_section,
    restrict_to_geodesic,
    section,
    validate_ray,
)

__version__ = "0.1.0"

__all__ = [
    "AmbientRay",
    "BusemannEstimate",
    "CorayResult",
    "Coupling",
    "DimensionMismatchError",
    "DiscreteMeasure",
    "EmptyMeasureError",
    "GeodesicLift",
    "GradientReport",
    "InvalidExponentError",
    "LipschitzReport",
    "MarginalMismatchError",
    "MeasureFileError",
    "MonotonicityError",
    "NonOptimalCouplingError",
    "RayMeasure",
    "RayValidationReport",
    "SubadditivityReport",
    "SubrayReport",
    "TailBoundReport",
    "UnitSpeedError",
    "ViscosityReport",
    "brute_force_ot",
    "busemann_subadditivity_check",
    "busemann_value",
    "construct_coray",
    "coray_gradient_check",
    "dirac",
    "distance",
    "glue",
    "interpolate",
    "lift_geodesic",
    "lipschitz_check",
    "make_dirac_ray",
    "make_translation_ray",
    "merge_atoms",
    "polyline_length",
    "ray_point",
    "ray_section",
    "read_measure",
    "read_ray",
    "restrict_to_geodesic",
    "same_measure",
    "section",
    "solve_ot",
    "subray_uniqueness_check",
    "tail_mass_bound_check",
    "uniform_measure",
    "validate_ray",
    "viscosity_check",
    "wasserstein_distance",
    "write_measure",
    "write_ray",
]

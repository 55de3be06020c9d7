"""Spherical cone structures on the three-sphere, singular along
collections of Hopf fibres.

The package builds the structures from spherical trigonometry on the
base two-sphere, verifies them through their holonomy, and exposes the
resulting geometric invariants plus a small CLI.
"""

from .errors import (
    BranchError,
    DomainError,
    IdenticalCircles,
    NumericalWarning,
    UsageError,
)
from .su2 import (
    GreatCircle,
    IsometryS3,
    Perpendicular,
    SU2Element,
    common_perpendicular,
    compose,
    distance,
    dot,
    isometry_gap,
    max_entry_diff,
    max_entry_diff_mod_sign,
    safe_arccos,
    translation_length_and_jump,
)
from .hopf import (
    BasePoint,
    ImaginaryQuaternion,
    base_fixed_point,
    fibre_distance,
    fibre_over,
    fibre_rotation,
    fibre_start,
    generic_fibre,
    hopf_map,
    polar_matrix,
    rotation_about_fibre,
    stereographic,
)
from .trig import (
    QuadrangleSolution,
    TriangleSolution,
    quadrangle_exists,
    residuals_h3,
    solve_quadrangle,
    solve_triangle,
    symmetric_tau,
    tau_domain,
    triangle_exists,
    triangle_violations,
)
from .holonomy import (
    HolonomyRep,
    TriangleSplit,
    build_h3,
    build_h4,
    central_translation_length,
    relation_residual,
    triangle_split_check,
)
from .invariants import (
    GeometryReport,
    ScanSolution,
    SweepRow,
    flexibility_sweep,
    h3_length,
    h3_report,
    h3_volume,
    h4_length,
    h4_report,
    h4_volume,
    rigidity_scan,
    schlafli_volume,
)

__version__ = "0.1.0"

__all__ = [
    "BranchError",
    "DomainError",
    "IdenticalCircles",
    "NumericalWarning",
    "UsageError",
    "GreatCircle",
    "IsometryS3",
    "Perpendicular",
    "SU2Element",
    "common_perpendicular",
    "compose",
    "distance",
    "dot",
    "isometry_gap",
    "max_entry_diff",
    "max_entry_diff_mod_sign",
    "safe_arccos",
    "translation_length_and_jump",
    "BasePoint",
    "ImaginaryQuaternion",
    "base_fixed_point",
    "fibre_distance",
    "fibre_over",
    "fibre_rotation",
    "fibre_start",
    "generic_fibre",
    "hopf_map",
    "polar_matrix",
    "rotation_about_fibre",
    "stereographic",
    "QuadrangleSolution",
    "TriangleSolution",
    "quadrangle_exists",
    "residuals_h3",
    "solve_quadrangle",
    "solve_triangle",
    "symmetric_tau",
    "tau_domain",
    "triangle_exists",
    "triangle_violations",
    "HolonomyRep",
    "TriangleSplit",
    "build_h3",
    "build_h4",
    "central_translation_length",
    "relation_residual",
    "triangle_split_check",
    "GeometryReport",
    "ScanSolution",
    "SweepRow",
    "flexibility_sweep",
    "h3_length",
    "h3_report",
    "h3_volume",
    "h4_length",
    "h4_report",
    "h4_volume",
    "rigidity_scan",
    "schlafli_volume",
    "__version__",
]

"""Isoperimetry and uncertainty on finitely generated groups.

The package builds finite windows of Cayley and Schreier graphs,
measures growth and perimeters exactly, and checks a chain of discrete
inequalities that ends in an uncertainty bound: fields cannot be small
in gradient and concentrated near a point at the same time.  Exact
rational arithmetic backs every identity; float kernels (optionally
numba compiled) carry the heavy scans.
"""

from .catalogue import build, default_horizon, names, system
from .corpus import float_fields, rational_fields
from .fields import (
    coarea_report,
    energy_subgradient,
    grad_lp_norm,
    grad_modulus,
    grad_modulus_exact,
    l1_norm_exact,
    lp_norm,
    median_exact,
    median_report,
    power_leibniz_report,
    to_dense,
    weighted_lp_norm,
    zero_sum,
)
from .groups import (
    ExploredBall,
    GeneratedSystem,
    ResourceCapError,
    ball_from_edges,
    cyclic,
    dihedral,
    diameter,
    distances_from,
    explore,
    free_abelian,
    free_group,
    heisenberg,
    hypercube,
    permutation_action,
    symmetric_group,
    validate_ball,
)
from .growth import (
    growth_counts,
    growth_value,
    half_mass_radius,
    mass_radius,
    superadditivity_report,
    translation_maps,
    translation_report,
)
from .isoperimetry import (
    ProfileEntry,
    WorkCapError,
    anneal_min_perimeter,
    cut_edges,
    double_counting_report,
    min_perimeter,
    profile,
    set_perimeter,
)
from .specio import build_from_spec, load_spec, system_from_spec, validate_spec
from .uncertainty import (
    AscentResult,
    FACTORS,
    additive_link_report,
    admissibility_report,
    balance_constant,
    canonical_weight,
    certified_constant,
    graph_diameter,
    hpw_report,
    isoperimetric_constant_trace,
    multipoint_weight,
    poincare_constant,
    poincare_report,
    uncertainty_ascent,
    uncertainty_ratio,
)

__version__ = "0.1.0"

__all__ = [
    "AscentResult",
    "ExploredBall",
    "FACTORS",
    "GeneratedSystem",
    "ProfileEntry",
    "ResourceCapError",
    "WorkCapError",
    "additive_link_report",
    "admissibility_report",
    "anneal_min_perimeter",
    "balance_constant",
    "ball_from_edges",
    "build",
    "build_from_spec",
    "canonical_weight",
    "certified_constant",
    "coarea_report",
    "cut_edges",
    "cyclic",
    "default_horizon",
    "diameter",
    "dihedral",
    "distances_from",
    "double_counting_report",
    "energy_subgradient",
    "explore",
    "float_fields",
    "free_abelian",
    "free_group",
    "grad_lp_norm",
    "grad_modulus",
    "grad_modulus_exact",
    "graph_diameter",
    "growth_counts",
    "growth_value",
    "half_mass_radius",
    "heisenberg",
    "hpw_report",
    "hypercube",
    "isoperimetric_constant_trace",
    "l1_norm_exact",
    "load_spec",
    "lp_norm",
    "mass_radius",
    "median_exact",
    "median_report",
    "min_perimeter",
    "multipoint_weight",
    "names",
    "permutation_action",
    "poincare_constant",
    "poincare_report",
    "power_leibniz_report",
    "profile",
    "rational_fields",
    "set_perimeter",
    "superadditivity_report",
    "symmetric_group",
    "system",
    "system_from_spec",
    "to_dense",
    "translation_maps",
    "translation_report",
    "uncertainty_ascent",
    "uncertainty_ratio",
    "validate_ball",
    "validate_spec",
    "weighted_lp_norm",
    "zero_sum",
]

"""Graphon Entropy v1.0 — Boundary Package

Bords du triangle de Razborov, scallops, cusps et graphons de référence.
"""

from .razborov import (
    ScallopSpec,
    REGIONS,
    scallop_index,
    scallop_params,
    scallop_cubic,
    scallop_cubic_derivatives,
    scallop_p,
    scallop_dp_dc,
    scallop_family_graphon,
    scallop_family_entropy,
    scallop_entropy_slope,
    scallop_width_for,
    cusp_graphon,
    min_triangle_density,
    max_triangle_density,
    er_curve,
    contains,
    infeasibility_message,
    reference_graphon,
    flat_asymmetry_entropy,
    flat_asymmetry_cost,
    boundary_table,
)

__all__ = [
    "ScallopSpec",
    "REGIONS",
    "scallop_index",
    "scallop_params",
    "scallop_cubic",
    "scallop_cubic_derivatives",
    "scallop_p",
    "scallop_dp_dc",
    "scallop_family_graphon",
    "scallop_family_entropy",
    "scallop_entropy_slope",
    "scallop_width_for",
    "cusp_graphon",
    "min_triangle_density",
    "max_triangle_density",
    "er_curve",
    "contains",
    "infeasibility_message",
    "reference_graphon",
    "flat_asymmetry_entropy",
    "flat_asymmetry_cost",
    "boundary_table",
]

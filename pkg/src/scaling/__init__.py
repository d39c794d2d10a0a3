"""Graphon Entropy v1.0 — Scaling Package

Études d'échelle près des bords plat, scallop et supérieur.
"""

from .studies import (
    CSV_COLUMNS,
    ScalingSample,
    ScalingReport,
    decade_ratios,
    flat_boundary_study,
    scallop_study,
    top_boundary_study,
    top_beta_over_alpha_limit,
)

__all__ = [
    "CSV_COLUMNS",
    "ScalingSample",
    "ScalingReport",
    "decade_ratios",
    "flat_boundary_study",
    "scallop_study",
    "top_boundary_study",
    "top_beta_over_alpha_limit",
]

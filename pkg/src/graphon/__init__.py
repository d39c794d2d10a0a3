"""Graphon Entropy v1.0 — Graphon Core

Représentation exacte des graphons k-podaux et de leurs fonctionnelles.
"""

from .entropy import (
    binary_entropy,
    binary_entropy_deriv1,
    binary_entropy_deriv2,
    binary_entropy_deriv1_inverse,
    entropy_from_logit,
    logistic_slope,
)
from .multipodal import MultipodalGraphon, SubgraphSpec, ColumnProfile
from .densities import (
    edge_density,
    triangle_density,
    shannon_entropy,
    overlap_matrix,
    cycle_density,
    hom_density,
    spectrum,
    canonicalize,
    functionals_from_arrays,
    edge_density_arrays,
    triangle_density_arrays,
    entropy_arrays,
    overlap_arrays,
)

__all__ = [
    "binary_entropy",
    "binary_entropy_deriv1",
    "binary_entropy_deriv2",
    "binary_entropy_deriv1_inverse",
    "entropy_from_logit",
    "logistic_slope",
    "MultipodalGraphon",
    "SubgraphSpec",
    "ColumnProfile",
    "edge_density",
    "triangle_density",
    "shannon_entropy",
    "overlap_matrix",
    "cycle_density",
    "hom_density",
    "spectrum",
    "canonicalize",
    "functionals_from_arrays",
    "edge_density_arrays",
    "triangle_density_arrays",
    "entropy_arrays",
    "overlap_arrays",
]

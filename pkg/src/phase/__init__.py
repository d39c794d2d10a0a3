"""Graphon Entropy v1.0 — Phase Package

Paramètres d'ordre (identités de Newton), rang numérique, détection de
symétrie et étiquettes de phases.
"""

from .order_parameters import (
    newton_determinant,
    order_parameter,
    order_parameters,
    spectral_order_parameter,
    rank,
)
from .classify import PhaseLabel, detect_symmetry, classify_graphon, classify

__all__ = [
    "newton_determinant",
    "order_parameter",
    "order_parameters",
    "spectral_order_parameter",
    "rank",
    "PhaseLabel",
    "detect_symmetry",
    "classify_graphon",
    "classify",
]

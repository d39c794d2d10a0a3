"""Graphon Entropy v1.0 — ERGM Package

Énergie libre, maximisation à (α, β) fixés et invisibilité ERGM.
"""

from .free_energy import free_energy, free_energy_arrays, maximize_free_energy
from .invisibility import GRID_COLUMNS, InvisibilityReport, invisibility_test, invisibility_grid

__all__ = [
    "free_energy",
    "free_energy_arrays",
    "maximize_free_energy",
    "GRID_COLUMNS",
    "InvisibilityReport",
    "invisibility_test",
    "invisibility_grid",
]

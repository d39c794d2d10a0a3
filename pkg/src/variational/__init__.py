"""Graphon Entropy v1.0 — Variational Package

Multiplicateurs (α, β), résidu d'Euler–Lagrange, valeur ponctuelle V et
worth des colonnes.
"""

from .multipliers import (
    Multipliers,
    extract_multipliers,
    el_residual,
    pointwise_value,
    pointwise_value_gradient,
)
from .worth import (
    WorthMaximizer,
    WorthSearchResult,
    VariationalDiagnostics,
    worth,
    pode_worths,
    worth_spread,
    worth_hessian,
    maximize_worth,
    worth_gap,
    diagnose,
)

__all__ = [
    "Multipliers",
    "extract_multipliers",
    "el_residual",
    "pointwise_value",
    "pointwise_value_gradient",
    "WorthMaximizer",
    "WorthSearchResult",
    "VariationalDiagnostics",
    "worth",
    "pode_worths",
    "worth_spread",
    "worth_hessian",
    "maximize_worth",
    "worth_gap",
    "diagnose",
]

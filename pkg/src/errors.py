"""Graphon Entropy v1.0 — Exceptions

Hiérarchie d'erreurs du package. Toutes dérivent de ValueError ou
RuntimeError pour rester attrapables par du code générique; le CLI les
traduit en codes de sortie (voir config.EXIT_CODES).

Date: Octobre 2026
"""

from typing import Any, Dict, List, Optional


class InfeasiblePointError(ValueError):
    """(e, t) hors du triangle de Razborov."""

    def __init__(self, message: str, e: float, t: float):
        super().__init__(message)
        self.e = e
        self.t = t


class FlatRegionError(ValueError):
    """Paramètres de scallop demandés pour e < ½ (région plate)."""


class SaturatedGraphonError(ValueError):
    """Aucun bloc intérieur: les multiplicateurs ne sont pas identifiables."""

    def __init__(self, message: str = "all blocks saturated"):
        super().__init__(message)


class AnsatzInfeasibleError(ValueError):
    """Triangle density inatteignable dans l'ansatz demandé."""

    def __init__(self, message: str = "ansatz infeasible", detail: str = ""):
        full = f"{message}: {detail}" if detail else message
        super().__init__(full)
        self.detail = detail


class SolverError(RuntimeError):
    """Aucun départ n'a convergé (partial: résultat partiel éventuel, ex. étude d'échelle)."""

    def __init__(self, message: str, diagnostics: Optional[List[Dict[str, Any]]] = None, partial: Any = None):
        super().__init__(message)
        self.diagnostics = diagnostics or []
        self.partial = partial


class GraphonFormatError(ValueError):
    """Fichier graphon JSON invalide."""

    def __init__(self, message: str, diagnostics: Optional[List[str]] = None):
        super().__init__(message)
        self.diagnostics = diagnostics or []

    def __str__(self) -> str:
        base = super().__str__()
        if not self.diagnostics:
            return base
        return base + "\n" + "\n".join(f"  - {d}" for d in self.diagnostics)

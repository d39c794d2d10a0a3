"""Graphon Entropy v1.0 — Symétries et classification des phases

Étiquettes (indicatives, jamais utilisées dans les calculs):
- "ER": rang 1
- "A(2,0)": bipodal symétrique de rang 2
- "C(n,2)": symétrie (n, 2), rang n+2, sous la courbe ER au-dessus du scallop n
- "F(1,1)": bipodal asymétrique de rang 2 au-dessus de la courbe ER
  (candidat, provisional=True)
- "unclassified" sinon

Date: Octobre 2026
"""

import logging
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from src.graphon.multipodal import MultipodalGraphon
from src.graphon.densities import edge_density, triangle_density
from src.boundary.razborov import scallop_index
from .order_parameters import PHASE, order_parameters, rank

logger = logging.getLogger(__name__)


@dataclass
class PhaseLabel:
    """Rang, symétrie, paramètres d'ordre p_2.. et étiquette de région."""
    rank: int
    symmetry: Optional[Tuple[int, int]]
    order_params: List[float] = field(default_factory=list)
    region_tag: str = "unclassified"
    provisional: bool = False

    def order_param(self, k: int) -> float:
        """p_k (k ≥ 2), NaN si non calculé."""
        index = k - 2
        return self.order_params[index] if 0 <= index < len(self.order_params) else float("nan")

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["symmetry"] = list(self.symmetry) if self.symmetry else None
        return data


# =============================================================================
# SYMÉTRIE
# =============================================================================

def _spread(values: List[float]) -> float:
    return float(np.ptp(values)) if values else 0.0


def _pode_classes(g: MultipodalGraphon, tol: float) -> List[List[int]]:
    """Podes groupés par (c_i, ligne triée) à tol près."""
    sorted_rows = np.sort(g.blocks, axis=1)
    classes: List[List[int]] = []
    for i in range(g.k):
        for members in classes:
            ref = members[0]
            if abs(g.podes[i] - g.podes[ref]) <= tol and np.max(np.abs(sorted_rows[i] - sorted_rows[ref])) <= tol:
                members.append(i)
                break
        else:
            classes.append([i])
    return classes


def _blocks_invariant(g: MultipodalGraphon, classes: List[List[int]], tol: float) -> bool:
    """Valeurs de blocs constantes sur chaque (classe × classe), diagonale à part."""
    B = g.blocks
    for P in classes:
        if _spread([B[i, i] for i in P]) > tol:
            return False
        for Q in classes:
            values = [B[i, j] for i in P for j in Q if i != j]
            if _spread(values) > tol:
                return False
    return True


def detect_symmetry(g: MultipodalGraphon, tol: float = None) -> Optional[Tuple[int, int]]:
    """
    Symétrie (n, m) du graphon.

    Une seule classe → (k, 0); deux classes → (n, m) ordonnées par somme de
    ligne moyenne croissante; sinon None. Les blocs doivent être invariants
    par permutation à l'intérieur des classes.
    """
    tol = PHASE["symmetry_tol"] if tol is None else tol
    classes = _pode_classes(g, tol)
    if len(classes) > 2 or not _blocks_invariant(g, classes, tol):
        return None
    if len(classes) == 1:
        return (g.k, 0)

    rowsum = g.blocks @ g.podes
    classes.sort(key=lambda members: (float(np.mean(rowsum[members])), members[0]))
    return (len(classes[0]), len(classes[1]))


# =============================================================================
# CLASSIFICATION
# =============================================================================

def _region_tag(
    g: MultipodalGraphon,
    r: int,
    symmetry: Optional[Tuple[int, int]],
    e: float,
    t: float,
) -> Tuple[str, bool]:
    if r == 1:
        return "ER", False

    if symmetry == (2, 0) and r == 2:
        return "A(2,0)", False

    below_er = t < e ** 3
    if symmetry is not None and 2 in symmetry and 0.5 < e < 1.0 and below_er:
        n = symmetry[0] if symmetry[1] == 2 else symmetry[1]
        if r == n + 2 and g.k == n + 2 and scallop_index(e) == n:
            return f"C({n},2)", False

    if g.k == 2 and r == 2 and symmetry == (1, 1) and t > e ** 3:
        return "F(1,1)", True

    return "unclassified", False


def classify_graphon(
    g: MultipodalGraphon,
    e: float = None,
    t: float = None,
    threshold: float = None,
    tol: float = None,
) -> PhaseLabel:
    """Classe un graphon (densités recalculées si non fournies)."""
    e = edge_density(g) if e is None else e
    t = triangle_density(g) if t is None else t
    r = rank(g, threshold)
    symmetry = detect_symmetry(g, tol)
    tag, provisional = _region_tag(g, r, symmetry, e, t)
    params = order_parameters(g)
    logger.debug(f"classify (e={e:.6g}, t={t:.6g}): rang {r}, symétrie {symmetry}, {tag}")
    return PhaseLabel(rank=r, symmetry=symmetry, order_params=params, region_tag=tag, provisional=provisional)


def classify(result) -> PhaseLabel:
    """PhaseLabel d'un OptimizationResult (densités cibles si connues)."""
    if result.target is not None:
        e, t = result.target
        return classify_graphon(result.graphon, e, t)
    return classify_graphon(result.graphon)

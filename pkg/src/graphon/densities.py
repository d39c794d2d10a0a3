"""Graphon Entropy v1.0 — Fonctionnelles de densité

Toutes les fonctionnelles d'un graphon multipodal sont des sommes finies:

- ε(g) = Σ c_i c_j B_ij
- τ(g) = Σ c_i c_j c_k B_ij B_jk B_ki = tr((B D)^3), D = diag(c)
- S(g) = Σ c_i c_j H(B_ij)
- G = B D B (chevauchement)
- t_m = tr((B D)^m) (densité de m-cycles)

Les variantes `*_arrays` prennent (c, B) bruts: l'optimiseur et les tests
de différences finies s'en servent sans reconstruire de graphon valide.

Date: Octobre 2026
"""

import itertools
import logging
import math
from typing import Tuple

import numpy as np
from scipy.linalg import eigvalsh

from .entropy import binary_entropy
from .multipodal import MultipodalGraphon, SubgraphSpec

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

try:
    from config import GRAPHON
except ImportError:
    GRAPHON = {"merge_tol": 1e-7, "max_subgraph_vertices": 8}

logger = logging.getLogger(__name__)


# =============================================================================
# NOYAUX SUR TABLEAUX
# =============================================================================

def edge_density_arrays(c: np.ndarray, B: np.ndarray) -> float:
    return float(c @ B @ c)


def triangle_density_arrays(c: np.ndarray, B: np.ndarray) -> float:
    M = B * c[None, :]
    return float(np.trace(M @ M @ M))


def entropy_arrays(c: np.ndarray, B: np.ndarray) -> float:
    return float(c @ binary_entropy(B) @ c)


def overlap_arrays(c: np.ndarray, B: np.ndarray) -> np.ndarray:
    return (B * c[None, :]) @ B


def functionals_from_arrays(c: np.ndarray, B: np.ndarray) -> Tuple[float, float, float]:
    """(S, ε, τ) pour des tableaux bruts (c non nécessairement normalisé)."""
    return entropy_arrays(c, B), edge_density_arrays(c, B), triangle_density_arrays(c, B)


def _cycle_trace(g: MultipodalGraphon, m: int) -> float:
    """tr((B D)^m) pour tout m ≥ 1 (t_1, t_2 servent aux spectres)."""
    M = g.blocks * g.podes[None, :]
    return float(np.trace(np.linalg.matrix_power(M, m)))


# =============================================================================
# FONCTIONNELLES PUBLIQUES
# =============================================================================

def edge_density(g: MultipodalGraphon) -> float:
    """ε(g) = Σ_ij c_i c_j B_ij."""
    return edge_density_arrays(g.podes, g.blocks)


def triangle_density(g: MultipodalGraphon) -> float:
    """τ(g) = Σ_ijk c_i c_j c_k B_ij B_jk B_ki."""
    return triangle_density_arrays(g.podes, g.blocks)


def shannon_entropy(g: MultipodalGraphon) -> float:
    """S(g) = Σ_ij c_i c_j H(B_ij), dans [0, ln 2]."""
    return entropy_arrays(g.podes, g.blocks)


def overlap_matrix(g: MultipodalGraphon) -> np.ndarray:
    """G_ij = Σ_m c_m B_im B_jm = (B D B)_ij."""
    G = overlap_arrays(g.podes, g.blocks)
    return 0.5 * (G + G.T)


def cycle_density(g: MultipodalGraphon, m: int) -> float:
    """Densité de m-cycles, m ≥ 3."""
    if m < 3:
        raise ValueError(f"cycle_density exige m ≥ 3 (t_1, t_2 ne sont pas des densités), reçu m={m}")
    return _cycle_trace(g, m)


def hom_density(g: MultipodalGraphon, K: SubgraphSpec) -> float:
    """
    Densité d'homomorphismes de K par énumération exhaustive.

    Somme sur toutes les affectations φ: V(K) → podes de
    Π_v c_φ(v) · Π_(u,v)∈E B_φ(u)φ(v). Coût k^v.
    """
    max_v = GRAPHON["max_subgraph_vertices"]
    if K.vertex_count > max_v:
        raise ValueError(f"Sous-graphe trop grand: {K.vertex_count} sommets > {max_v}")

    c = g.podes
    B = g.blocks
    total = 0.0
    for phi in itertools.product(range(g.k), repeat=K.vertex_count):
        weight = math.prod(c[p] for p in phi)
        if weight == 0.0:
            continue
        for u, v in K.edges:
            weight *= B[phi[u], phi[v]]
            if weight == 0.0:
                break
        total += weight
    return float(total)


def spectrum(g: MultipodalGraphon) -> np.ndarray:
    """Valeurs propres de D^½ B D^½, triées par |λ| décroissant."""
    s = np.sqrt(g.podes)
    M = s[:, None] * g.blocks * s[None, :]
    eig = eigvalsh(0.5 * (M + M.T))
    order = np.lexsort((-eig, -np.abs(eig)))
    return eig[order]


# =============================================================================
# FORME CANONIQUE
# =============================================================================

def _sort_order(c: np.ndarray, B: np.ndarray) -> np.ndarray:
    rowsum = B @ c
    keys = []
    for i in range(c.size):
        row_key = tuple(-np.round(np.sort(B[i]), 12))
        keys.append((-round(float(rowsum[i]), 12), -round(float(c[i]), 12), row_key, i))
    return np.array([key[-1] for key in sorted(keys)], dtype=int)


def _merge_pair(c: np.ndarray, B: np.ndarray, i: int, j: int) -> Tuple[np.ndarray, np.ndarray]:
    """Fusionne j dans i: largeurs additionnées, valeurs moyennées (poids c)."""
    ci, cj = c[i], c[j]
    cn = ci + cj
    row = (ci * B[i] + cj * B[j]) / cn
    diag = (ci * ci * B[i, i] + 2.0 * ci * cj * B[i, j] + cj * cj * B[j, j]) / (cn * cn)

    B = B.copy()
    B[i, :] = row
    B[:, i] = row
    B[i, i] = diag
    c = c.copy()
    c[i] = cn

    keep = [m for m in range(c.size) if m != j]
    return c[keep], B[np.ix_(keep, keep)]


def canonicalize(g: MultipodalGraphon, merge_tol: float = None) -> MultipodalGraphon:
    """
    Forme canonique: podes triés, podes équivalents fusionnés.

    Tri par (somme de ligne pondérée par c, puis c_i) décroissants; deux podes
    dont les lignes de B diffèrent de moins de merge_tol (norme max, diagonale
    mutuelle incluse) sont fusionnés. Répété jusqu'à stabilité.
    Toutes les paires sont comparées, pas seulement les voisines après tri:
    deux podes non adjacents aux lignes proches sont fusionnés aussi.
    """
    tol = GRAPHON["merge_tol"] if merge_tol is None else merge_tol
    c = np.array(g.podes)
    B = np.array(g.blocks)

    merged = True
    while merged and c.size > 1:
        merged = False
        for i, j in itertools.combinations(range(c.size), 2):
            if np.max(np.abs(B[i] - B[j])) < tol:
                c, B = _merge_pair(c, B, i, j)
                merged = True
                break

    order = _sort_order(c, B)
    if c.size == g.k and np.array_equal(order, np.arange(g.k)):
        return g
    return MultipodalGraphon(c[order], B[np.ix_(order, order)])

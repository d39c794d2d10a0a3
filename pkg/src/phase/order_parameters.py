"""Graphon Entropy v1.0 — Paramètres d'ordre et rang

Le k-ième paramètre d'ordre est p_k(g³), polynôme symétrique élémentaire
des valeurs propres de g³. Les identités de Newton l'expriment avec les
sommes de puissances t_j = tr(g^{3j}) = densité de 3j-cycles, seules
densités de cycles réalisables (t_1, t_2 ne le sont pas).

    p_2 = (t₁² - t₂) / 2
    p_3 = (t₁³ - 3t₁t₂ + 2t₃) / 6
    p_4 = (t₁⁴ - 6t₁²t₂ + 3t₂² + 8t₁t₃ - 6t₄) / 24

p_k s'annule exactement quand rang(g) < k.

Date: Octobre 2026
"""

from typing import Sequence

import numpy as np

from src.graphon.multipodal import MultipodalGraphon
from src.graphon.densities import cycle_density, spectrum

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

try:
    from config import PHASE
except ImportError:
    PHASE = {
        "rank_threshold": 1e-8,
        "symmetry_tol": 1e-7,
        "max_order": 4,
        "order_limit": 6,
    }


def newton_determinant(power_sums: Sequence[float], k: int) -> float:
    """
    e_k à partir des sommes de puissances t_1..t_k.

    e_0 = 1, e_m = (1/m) Σ_{j=1..m} (-1)^{j-1} e_{m-j} t_j
    """
    if k < 1:
        raise ValueError(f"k doit être ≥ 1, reçu {k}")
    if len(power_sums) < k:
        raise ValueError(f"{len(power_sums)} sommes de puissances pour k = {k}")

    elementary = [1.0]
    for m in range(1, k + 1):
        acc = 0.0
        for j in range(1, m + 1):
            acc += (-1) ** (j - 1) * elementary[m - j] * power_sums[j - 1]
        elementary.append(acc / m)
    return float(elementary[k])


def order_parameter(g: MultipodalGraphon, k: int) -> float:
    """p_k(g³) via les densités de cycles de longueur 3, 6, ..., 3k (2 ≤ k ≤ 6)."""
    if not 2 <= k <= PHASE["order_limit"]:
        raise ValueError(f"order_parameter exige 2 ≤ k ≤ {PHASE['order_limit']}, reçu {k}")
    sums = [cycle_density(g, 3 * j) for j in range(1, k + 1)]
    return newton_determinant(sums, k)


def spectral_order_parameter(g: MultipodalGraphon, k: int) -> float:
    """
    e_k des cubes du spectre, calculé par np.poly.

    Égal au produit des k plus grands cubes quand le rang vaut k.
    """
    if k < 1:
        raise ValueError(f"k doit être ≥ 1, reçu {k}")
    cubes = spectrum(g) ** 3
    if k > cubes.size:
        return 0.0
    coeffs = np.poly(cubes)
    return float((-1) ** k * coeffs[k])


def rank(g: MultipodalGraphon, threshold: float = None) -> int:
    """Nombre de valeurs propres |λ| > threshold · max(1, |λ|max)."""
    threshold = PHASE["rank_threshold"] if threshold is None else threshold
    eig = spectrum(g)
    scale = max(1.0, float(np.max(np.abs(eig))))
    return int(np.sum(np.abs(eig) > threshold * scale))


def order_parameters(g: MultipodalGraphon, max_order: int = None) -> list:
    """[p_2, ..., p_max_order]."""
    max_order = PHASE["max_order"] if max_order is None else max_order
    return [order_parameter(g, k) for k in range(2, max_order + 1)]

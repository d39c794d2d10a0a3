"""Graphon Entropy v1.0 — Multiplicateurs de Lagrange et équation d'Euler–Lagrange

À l'optimum contraint, en tout bloc intérieur:
    H'(B_ij) = α + β G_ij
Les blocs saturés (B < δ ou B > 1-δ) ne satisfont qu'une inégalité
unilatérale: dS ≤ α dε + (β/3) dτ pour les variations admissibles.

Date: Octobre 2026
"""

import logging
from dataclasses import dataclass

import numpy as np

from src.errors import SaturatedGraphonError
from src.graphon.entropy import binary_entropy, binary_entropy_deriv1
from src.graphon.densities import overlap_matrix
from src.graphon.multipodal import MultipodalGraphon

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

try:
    from config import VARIATIONAL
except ImportError:
    VARIATIONAL = {
        "saturation_delta": 1e-9,
        "max_condition": 1e10,
    }

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Multipliers:
    """Couple (α, β); degenerate si le système d'extraction est de rang < 2."""
    alpha: float
    beta: float
    degenerate: bool = False

    def __post_init__(self):
        if not (np.isfinite(self.alpha) and np.isfinite(self.beta)):
            raise ValueError(f"Multiplicateurs non finis: α={self.alpha}, β={self.beta}")

    @classmethod
    def canonical_er(cls, p: float) -> "Multipliers":
        """Représentant (H'(p), 0) de la droite des multiplicateurs ER."""
        return cls(alpha=float(binary_entropy_deriv1(p)), beta=0.0, degenerate=True)

    def to_dict(self) -> dict:
        return {"alpha": self.alpha, "beta": self.beta, "degenerate": self.degenerate}


def _interior_mask(B: np.ndarray, delta: float) -> np.ndarray:
    return (B > delta) & (B < 1.0 - delta)


def extract_multipliers(g: MultipodalGraphon, delta: float = None) -> Multipliers:
    """
    Moindres carrés pondérés de H'(B_ij) = α + β G_ij sur les blocs intérieurs.

    Chaque paire i ≤ j pèse l'aire des rectangles qu'elle couvre (c_i² sur la
    diagonale, 2 c_i c_j ailleurs). Si le système est de rang < 2 ou mal
    conditionné (tous les G_ij intérieurs égaux: cas ER), renvoie
    (moyenne pondérée de H', 0) avec degenerate=True.

    Raises:
        SaturatedGraphonError: aucun bloc intérieur
    """
    delta = VARIATIONAL["saturation_delta"] if delta is None else delta
    c = g.podes
    B = g.blocks
    G = overlap_matrix(g)

    iu, ju = np.triu_indices(g.k)
    mask = _interior_mask(B[iu, ju], delta)
    if not np.any(mask):
        raise SaturatedGraphonError()

    iu, ju = iu[mask], ju[mask]
    weights = np.where(iu == ju, 1.0, 2.0) * c[iu] * c[ju]
    y = binary_entropy_deriv1(B[iu, ju])
    X = np.column_stack([np.ones(iu.size), G[iu, ju]])

    sw = np.sqrt(weights)
    Xw = X * sw[:, None]
    yw = y * sw

    rank = np.linalg.matrix_rank(Xw) if iu.size >= 2 else 1
    cond = np.linalg.cond(Xw) if iu.size >= 2 else np.inf
    if rank < 2 or cond > VARIATIONAL["max_condition"]:
        alpha = float(np.sum(weights * y) / np.sum(weights))
        logger.debug(f"Multiplicateurs dégénérés (rang {rank}, cond {cond:.3g}): α={alpha:.6g}, β=0")
        return Multipliers(alpha=alpha, beta=0.0, degenerate=True)

    (alpha, beta), *_ = np.linalg.lstsq(Xw, yw, rcond=None)
    return Multipliers(alpha=float(alpha), beta=float(beta), degenerate=False)


def el_residual(g: MultipodalGraphon, mult: Multipliers, delta: float = None) -> float:
    """
    Résidu d'Euler–Lagrange.

    Blocs intérieurs: |H'(B) - α - βG|. Blocs saturés à 0: violation
    max(0, H'(δ) - α - βG) (le bloc devrait valoir plus que δ). Blocs
    saturés à 1: violation max(0, α + βG - H'(1-δ)).
    """
    delta = VARIATIONAL["saturation_delta"] if delta is None else delta
    B = g.blocks
    lam = mult.alpha + mult.beta * overlap_matrix(g)

    interior = _interior_mask(B, delta)
    low = B <= delta
    high = B >= 1.0 - delta

    residual = 0.0
    if np.any(interior):
        hp = binary_entropy_deriv1(B[interior])
        residual = max(residual, float(np.max(np.abs(hp - lam[interior]))))
    if np.any(low):
        edge = binary_entropy_deriv1(delta)
        residual = max(residual, float(np.max(np.maximum(0.0, edge - lam[low]))))
    if np.any(high):
        edge = binary_entropy_deriv1(1.0 - delta)
        residual = max(residual, float(np.max(np.maximum(0.0, lam[high] - edge))))
    return residual


def pointwise_value(g: MultipodalGraphon, mult: Multipliers) -> np.ndarray:
    """V_ij = H(B_ij) - α B_ij - β G_ij B_ij."""
    B = g.blocks
    G = overlap_matrix(g)
    return binary_entropy(B) - mult.alpha * B - mult.beta * G * B


def pointwise_value_gradient(g: MultipodalGraphon, mult: Multipliers) -> np.ndarray:
    """∂V_ij/∂B_ij à G fixé: H'(B_ij) - α - β G_ij (nul là où EL est satisfaite)."""
    G = overlap_matrix(g)
    return binary_entropy_deriv1(g.blocks) - mult.alpha - mult.beta * G

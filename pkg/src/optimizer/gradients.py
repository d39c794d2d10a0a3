"""Graphon Entropy v1.0 — Gradients des fonctionnelles

Dérivées de (S, ε, τ) par rapport aux valeurs de blocs B_ij (i ≤ j, B_ij et
B_ji variant ensemble) et aux largeurs c_i (traitées comme indépendantes):

- ∂ε/∂B_ij = (2-[i=j]) c_i c_j            ∂ε/∂c = 2 B c
- ∂τ/∂B_ij = 3 (2-[i=j]) c_i c_j G_ij     ∂τ/∂c = 3 (G∘B) c
- ∂S/∂B_ij = (2-[i=j]) c_i c_j H'(B_ij)   ∂S/∂c = 2 H(B) c

Date: Octobre 2026
"""

from dataclasses import dataclass

import numpy as np

from src.graphon.entropy import binary_entropy, binary_entropy_deriv1
from src.graphon.densities import overlap_arrays
from src.graphon.multipodal import MultipodalGraphon


@dataclass
class FunctionalGradients:
    """Gradients de S, ε, τ. Matrices k×k symétriques (paires), vecteurs k (largeurs)."""
    dS_dB: np.ndarray
    deps_dB: np.ndarray
    dtau_dB: np.ndarray
    dS_dc: np.ndarray
    deps_dc: np.ndarray
    dtau_dc: np.ndarray


def pair_multiplicity(k: int) -> np.ndarray:
    """(2 - [i=j]): nombre de rectangles couverts par la paire {i, j}."""
    return 2.0 - np.eye(k)


def gradients_from_arrays(c: np.ndarray, B: np.ndarray, with_entropy: bool = True) -> FunctionalGradients:
    """Version tableaux bruts. with_entropy=False saute S (blocs saturés permis)."""
    k = c.size
    area = np.outer(c, c) * pair_multiplicity(k)
    G = overlap_arrays(c, B)
    G = 0.5 * (G + G.T)

    deps_dB = area
    dtau_dB = 3.0 * area * G
    deps_dc = 2.0 * (B @ c)
    dtau_dc = 3.0 * ((G * B) @ c)

    if with_entropy:
        dS_dB = area * binary_entropy_deriv1(B)
        dS_dc = 2.0 * (binary_entropy(B) @ c)
    else:
        dS_dB = np.full((k, k), np.nan)
        dS_dc = np.full(k, np.nan)

    return FunctionalGradients(
        dS_dB=dS_dB, deps_dB=deps_dB, dtau_dB=dtau_dB,
        dS_dc=dS_dc, deps_dc=deps_dc, dtau_dc=dtau_dc,
    )


def functional_gradients(g: MultipodalGraphon) -> FunctionalGradients:
    """
    Gradients analytiques de (S, ε, τ) en g.

    Raises:
        ValueError: bloc saturé (0 ou 1), où ∂S/∂B a un pôle
    """
    return gradients_from_arrays(g.podes, g.blocks, with_entropy=True)

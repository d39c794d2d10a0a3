"""Graphon Entropy v1.0 — Structures de blocs et ansätze

Le solveur travaille sur un espace réduit x = [u, v]:
- u: un logit par classe de blocs (B_ij = σ(u_b) pour (i, j) ∈ b)
- v: logits des parts des classes de podes, s = softmax([0, v]); chaque
  pode de la classe q (multiplicité m_q) a la largeur s_q / m_q

free_k n'impose aucune égalité; symmetric_bipodal et n2_symmetric lient
les blocs et les podes équivalents par symétrie.

Date: Octobre 2026
"""

import logging
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np
from scipy.special import expit, logit, softmax

from src.graphon.entropy import entropy_from_logit, logistic_slope
from src.graphon.densities import overlap_arrays
from src.graphon.multipodal import MultipodalGraphon
from .gradients import gradients_from_arrays

logger = logging.getLogger(__name__)

ANSATZ_KINDS = ("free_k", "symmetric_bipodal", "n2_symmetric")


@dataclass(frozen=True)
class AnsatzSpec:
    """Famille de graphons explorée: free_k (k podes), symmetric_bipodal, n2_symmetric (n)."""
    kind: str
    k: int = 0
    n: int = 0

    def __post_init__(self):
        if self.kind not in ANSATZ_KINDS:
            raise ValueError(f"Ansatz inconnu: {self.kind} (attendu: {', '.join(ANSATZ_KINDS)})")
        if self.kind == "free_k" and not 1 <= self.k <= 8:
            raise ValueError(f"free_k exige 1 ≤ k ≤ 8, reçu k={self.k}")
        if self.kind == "n2_symmetric" and self.n < 1:
            raise ValueError(f"n2_symmetric exige n ≥ 1, reçu n={self.n}")

    @property
    def pode_count(self) -> int:
        if self.kind == "free_k":
            return self.k
        if self.kind == "symmetric_bipodal":
            return 2
        return self.n + 2

    def structure(self) -> "BlockStructure":
        if self.kind == "free_k":
            return free_structure(self.k)
        if self.kind == "symmetric_bipodal":
            return symmetric_bipodal_structure()
        return n2_symmetric_structure(self.n)


@dataclass
class SpaceEvaluation:
    """Fonctionnelles et gradients en x."""
    entropy: float
    edge: float
    triangle: float
    grad_entropy: np.ndarray
    grad_edge: np.ndarray
    grad_triangle: np.ndarray


@dataclass
class BlockStructure:
    """Classes de podes et de blocs liées par symétrie."""
    k: int
    pode_classes: List[List[int]]
    block_classes: List[List[Tuple[int, int]]]
    name: str = "free"
    _block_index: np.ndarray = field(init=False, repr=False)
    _pode_index: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        block_index = np.full((self.k, self.k), -1, dtype=int)
        for b, pairs in enumerate(self.block_classes):
            for i, j in pairs:
                block_index[i, j] = block_index[j, i] = b
        if np.any(block_index < 0):
            raise ValueError("Chaque paire (i, j) doit appartenir à une classe de blocs")
        pode_index = np.full(self.k, -1, dtype=int)
        for q, members in enumerate(self.pode_classes):
            pode_index[members] = q
        if np.any(pode_index < 0):
            raise ValueError("Chaque pode doit appartenir à une classe")
        self._block_index = block_index
        self._pode_index = pode_index

    # === Dimensions ===

    @property
    def n_blocks(self) -> int:
        return len(self.block_classes)

    @property
    def n_pode_classes(self) -> int:
        return len(self.pode_classes)

    @property
    def dim(self) -> int:
        return self.n_blocks + self.n_pode_classes - 1

    @property
    def multiplicities(self) -> np.ndarray:
        return np.array([len(m) for m in self.pode_classes], dtype=float)

    def representatives(self) -> List[Tuple[int, int]]:
        return [pairs[0] for pairs in self.block_classes]

    def split(self, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        return x[: self.n_blocks], x[self.n_blocks:]

    # === Conversions ===

    def widths(self, v: np.ndarray) -> np.ndarray:
        shares = softmax(np.concatenate([[0.0], v]))
        return (shares / self.multiplicities)[self._pode_index]

    def block_logits(self, u: np.ndarray) -> np.ndarray:
        return u[self._block_index]

    def arrays(self, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        u, v = self.split(x)
        return self.widths(v), expit(self.block_logits(u))

    def graphon(self, x: np.ndarray) -> MultipodalGraphon:
        c, B = self.arrays(x)
        return MultipodalGraphon.from_widths(c, B)

    def encode(self, g: MultipodalGraphon, clamp: float = None) -> np.ndarray:
        """x représentant g (moyennes par classe; logits bornés à ±clamp si donné)."""
        if g.k != self.k:
            raise ValueError(f"Graphon {g.k}-podal pour une structure à {self.k} podes")
        u = np.empty(self.n_blocks)
        for b, pairs in enumerate(self.block_classes):
            value = np.mean([g.blocks[i, j] for i, j in pairs])
            u[b] = logit(np.clip(value, 1e-300, 1.0 - 1e-16))
        if clamp is not None:
            u = np.clip(u, -clamp, clamp)
        shares = np.array([g.podes[m].sum() for m in self.pode_classes])
        v = np.log(shares[1:]) - np.log(shares[0])
        return np.concatenate([u, v])

    # === Fonctionnelles et gradients ===

    def evaluate(self, x: np.ndarray) -> SpaceEvaluation:
        """(S, ε, τ) et leurs gradients par rapport à x."""
        u, v = self.split(x)
        c = self.widths(v)
        U = self.block_logits(u)
        B = expit(U)

        area = np.outer(c, c)
        S = float(np.sum(area * entropy_from_logit(U)))
        E = float(c @ B @ c)
        M = B * c[None, :]
        T = float(np.trace(M @ M @ M))

        grads = gradients_from_arrays(c, B, with_entropy=False)
        G = overlap_arrays(c, B)
        G = 0.5 * (G + G.T)
        slope = logistic_slope(U)

        # H'(σ(U)) = -U
        entry_S = area * (-U) * slope
        entry_E = area * slope
        entry_T = 3.0 * area * G * slope
        dS_dc = 2.0 * (entropy_from_logit(U) @ c)

        def reduce_blocks(entry: np.ndarray) -> np.ndarray:
            return np.bincount(self._block_index.ravel(), weights=entry.ravel(), minlength=self.n_blocks)

        def reduce_widths(dc: np.ndarray) -> np.ndarray:
            if self.n_pode_classes == 1:
                return np.zeros(0)
            shares = softmax(np.concatenate([[0.0], v]))
            per_class = np.bincount(self._pode_index, weights=dc, minlength=self.n_pode_classes)
            per_class = per_class / self.multiplicities
            dz = shares * (per_class - shares @ per_class)
            return dz[1:]

        return SpaceEvaluation(
            entropy=S,
            edge=E,
            triangle=T,
            grad_entropy=np.concatenate([reduce_blocks(entry_S), reduce_widths(dS_dc)]),
            grad_edge=np.concatenate([reduce_blocks(entry_E), reduce_widths(grads.deps_dc)]),
            grad_triangle=np.concatenate([reduce_blocks(entry_T), reduce_widths(grads.dtau_dc)]),
        )

    def bounds(self, logit_clamp: float, share_clamp: float) -> List[Tuple[float, float]]:
        return [(-logit_clamp, logit_clamp)] * self.n_blocks + [(-share_clamp, share_clamp)] * (self.n_pode_classes - 1)


# =============================================================================
# CONSTRUCTEURS
# =============================================================================

def free_structure(k: int) -> BlockStructure:
    """Aucune symétrie imposée."""
    pairs = [[(i, j)] for i in range(k) for j in range(i, k)]
    return BlockStructure(k=k, pode_classes=[[i] for i in range(k)], block_classes=pairs, name=f"free_{k}")


def symmetric_bipodal_structure() -> BlockStructure:
    """c = (½, ½), B = [[A, D], [D, A]]."""
    return BlockStructure(
        k=2,
        pode_classes=[[0, 1]],
        block_classes=[[(0, 0), (1, 1)], [(0, 1)]],
        name="symmetric_bipodal",
    )


def n2_symmetric_structure(n: int) -> BlockStructure:
    """
    Symétrie (n, 2): n petits podes équivalents, deux grands podes équivalents.

    Classes de blocs: diagonale des petits, petits×petits (n ≥ 2),
    petits×grands, diagonale des grands, grand×grand.
    """
    small = list(range(n))
    large = [n, n + 1]
    classes = [[(i, i) for i in small]]
    if n >= 2:
        classes.append([(i, j) for i in small for j in small if i < j])
    classes.append([(i, j) for i in small for j in large])
    classes.append([(n, n), (n + 1, n + 1)])
    classes.append([(n, n + 1)])
    return BlockStructure(k=n + 2, pode_classes=[small, large], block_classes=classes, name=f"n2_symmetric_{n}")


def embed(g: MultipodalGraphon, k: int) -> MultipodalGraphon:
    """Raffine g jusqu'à k podes en coupant le plus large pode en deux."""
    if g.k > k:
        raise ValueError(f"Impossible de plonger un graphon {g.k}-podal dans {k} podes")
    while g.k < k:
        g = g.split_pode(int(np.argmax(g.podes)))
    return g


def soften(g: MultipodalGraphon, eps: float) -> MultipodalGraphon:
    """Ramène les blocs dans [eps, 1-eps] (gradient non nul en logit)."""
    return MultipodalGraphon(g.podes, np.clip(g.blocks, eps, 1.0 - eps))

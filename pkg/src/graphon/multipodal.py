"""Graphon Entropy v1.0 — Graphons multipodaux

Un graphon k-podal est constant sur chaque rectangle I_i × I_j:
- podes: largeurs c_i > 0 avec Σ c_i = 1
- blocks: matrice k×k symétrique B, 0 ≤ B_ij ≤ 1

Les instances sont immuables (tableaux numpy en lecture seule) et peuvent
donc être partagées entre threads ou processus sans copie défensive.

Date: Octobre 2026
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

try:
    from config import GRAPHON
except ImportError:
    GRAPHON = {
        "sum_tol": 1e-12,
        "symmetry_tol": 1e-12,
        "renormalize_tol": 1e-9,
        "merge_tol": 1e-7,
        "max_subgraph_vertices": 8,
    }

logger = logging.getLogger(__name__)


def _frozen(values: np.ndarray) -> np.ndarray:
    values.setflags(write=False)
    return values


@dataclass(frozen=True, eq=False)
class MultipodalGraphon:
    """
    Graphon constant par blocs sur une partition de [0, 1] en k podes.

    Le constructeur valide les invariants et miroite le triangle supérieur
    de `blocks` (une asymétrie ≤ 1e-12 est tolérée puis effacée).

    Example:
        >>> g = MultipodalGraphon([0.5, 0.5], [[0.0, 0.6], [0.6, 0.0]])
        >>> g.k
        2
    """
    podes: np.ndarray
    blocks: np.ndarray

    def __post_init__(self):
        c = np.array(self.podes, dtype=float).reshape(-1)
        b = np.array(self.blocks, dtype=float)
        k = c.size

        if k == 0:
            raise ValueError("Un graphon multipodal a au moins un pode")
        if b.shape != (k, k):
            raise ValueError(f"blocks doit être {k}×{k}, reçu {b.shape}")
        if not np.all(np.isfinite(c)) or not np.all(np.isfinite(b)):
            raise ValueError("Valeurs non finies dans podes/blocks")
        if np.any(c <= 0.0):
            raise ValueError(f"Largeurs de podes non positives: {c}")
        if abs(c.sum() - 1.0) > GRAPHON["sum_tol"]:
            raise ValueError(f"Σ c_i = {c.sum():.15g}, attendu 1 à {GRAPHON['sum_tol']:g} près")
        if np.any(b < 0.0) or np.any(b > 1.0):
            raise ValueError("Valeurs de blocs hors de [0, 1]")

        asym = float(np.max(np.abs(b - b.T)))
        if asym > GRAPHON["symmetry_tol"]:
            raise ValueError(f"blocks non symétrique (écart max {asym:.3g})")
        upper = np.triu(b)
        b = upper + np.triu(upper, 1).T

        object.__setattr__(self, "podes", _frozen(c))
        object.__setattr__(self, "blocks", _frozen(b))

    # === Constructeurs ===

    @classmethod
    def from_widths(cls, widths: Sequence[float], blocks: Any) -> "MultipodalGraphon":
        """Construit en renormalisant les largeurs (Σ c = 1 exactement ou presque)."""
        c = np.array(widths, dtype=float).reshape(-1)
        total = c.sum()
        if total <= 0.0:
            raise ValueError("Somme des largeurs non positive")
        return cls(c / total, blocks)

    @classmethod
    def constant(cls, p: float) -> "MultipodalGraphon":
        """Graphon constant p (Erdős–Rényi)."""
        return cls([1.0], [[p]])

    # === Accès ===

    @property
    def k(self) -> int:
        return int(self.podes.size)

    def row(self, i: int) -> np.ndarray:
        """Colonne réelle du pode i (ligne i de B)."""
        return self.blocks[i].copy()

    def permute(self, order: Sequence[int]) -> "MultipodalGraphon":
        idx = np.asarray(order, dtype=int)
        if sorted(idx.tolist()) != list(range(self.k)):
            raise ValueError(f"Permutation invalide: {order}")
        return MultipodalGraphon(self.podes[idx], self.blocks[np.ix_(idx, idx)])

    def split_pode(self, i: int, fraction: float = 0.5) -> "MultipodalGraphon":
        """Raffinement: coupe le pode i en deux podes aux lignes identiques."""
        if not 0.0 < fraction < 1.0:
            raise ValueError("fraction doit être dans (0, 1)")
        c = list(self.podes)
        ci = c[i]
        c[i] = ci * fraction
        c.insert(i + 1, ci * (1.0 - fraction))
        idx = list(range(self.k))
        idx.insert(i + 1, i)
        b = self.blocks[np.ix_(idx, idx)]
        return MultipodalGraphon(np.array(c), b)

    def distance(self, other: "MultipodalGraphon") -> float:
        """Distance en norme max sur (c, B); infinie si k diffère."""
        if self.k != other.k:
            return float("inf")
        return float(max(
            np.max(np.abs(self.podes - other.podes)),
            np.max(np.abs(self.blocks - other.blocks)),
        ))

    # === Sérialisation ===

    def to_dict(self) -> Dict[str, List]:
        return {
            "podes": [float(x) for x in self.podes],
            "blocks": [[float(x) for x in row] for row in self.blocks],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "MultipodalGraphon":
        return cls(data["podes"], data["blocks"])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultipodalGraphon):
            return NotImplemented
        return bool(
            np.array_equal(self.podes, other.podes)
            and np.array_equal(self.blocks, other.blocks)
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"MultipodalGraphon(podes={self.podes.tolist()!r}, blocks={self.blocks.tolist()!r})"


@dataclass(frozen=True)
class SubgraphSpec:
    """Graphe simple K dont on mesure la densité d'homomorphismes."""
    vertex_count: int
    edges: Tuple[Tuple[int, int], ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.vertex_count < 1:
            raise ValueError("vertex_count doit être ≥ 1")
        normalized = []
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"Boucle interdite: ({u}, {v})")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ValueError(f"Sommet hors de [0, {self.vertex_count}): ({u}, {v})")
            normalized.append((min(u, v), max(u, v)))
        if len(set(normalized)) != len(normalized):
            raise ValueError("Arêtes dupliquées")
        object.__setattr__(self, "edges", tuple(normalized))

    @classmethod
    def cycle(cls, m: int) -> "SubgraphSpec":
        return cls(m, tuple((i, (i + 1) % m) for i in range(m)))

    @classmethod
    def edge(cls) -> "SubgraphSpec":
        return cls(2, ((0, 1),))

    @classmethod
    def triangle(cls) -> "SubgraphSpec":
        return cls.cycle(3)


@dataclass(frozen=True, eq=False)
class ColumnProfile:
    """Colonne candidate constante par pode (valeurs a_i ∈ [0, 1])."""
    values: np.ndarray

    def __post_init__(self):
        a = np.array(self.values, dtype=float).reshape(-1)
        if np.any(np.isnan(a)) or np.any(a < 0.0) or np.any(a > 1.0):
            raise ValueError(f"Profil de colonne hors de [0, 1]: {a}")
        object.__setattr__(self, "values", _frozen(a))

    def check_against(self, g: MultipodalGraphon) -> None:
        if self.values.size != g.k:
            raise ValueError(f"Profil de longueur {self.values.size} pour un graphon {g.k}-podal")

    def __len__(self) -> int:
        return int(self.values.size)

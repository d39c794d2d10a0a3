"""Graphon Entropy v1.0 — Graines du multi-start

Graines structurées (ER, ER perturbé, bipodal symétrique exact, famille du
scallop, pode de taille √e) puis graines aléatoires. Chaque départ a son
propre générateur dérivé de (seed, stream, k, index).

Date: Octobre 2026
"""

import logging
from dataclasses import dataclass
from typing import List, Optional

import numpy as np
from scipy.optimize import brentq

from src.errors import AnsatzInfeasibleError, SaturatedGraphonError
from src.graphon.multipodal import MultipodalGraphon
from src.boundary.razborov import (
    reference_graphon,
    scallop_family_graphon,
    scallop_index,
    scallop_params,
    scallop_width_for,
)
from src.variational.multipliers import Multipliers, extract_multipliers
from .structure import embed, soften

logger = logging.getLogger(__name__)

PERTURBATION = 0.05


@dataclass
class Seed:
    """Point de départ: graphon (déjà plongé dans k podes) et multiplicateurs éventuels."""
    label: str
    graphon: MultipodalGraphon
    multipliers: Optional[Multipliers] = None


def start_rng(seed: int, stream: int, k: int, index: int) -> np.random.Generator:
    """Générateur du départ `index`, indépendant de l'ordre d'exécution."""
    return np.random.default_rng([seed, stream, k, index])


# =============================================================================
# BIPODAL SYMÉTRIQUE EXACT
# =============================================================================

def _bipodal_t(e: float, A: float) -> float:
    D = 2.0 * e - A
    return 0.75 * A * D * D + 0.25 * A ** 3


def symmetric_bipodal_root(e: float, t: float) -> float:
    """
    A tel que t = ¾AD² + ¼A³ avec D = 2e - A.

    t(A) est croissante sur [max(0, 2e-1), e] (dt/dA = 3(e-A)²); en dehors de
    [t(A_min), e³] le bipodal symétrique ne peut pas atteindre t.

    Raises:
        AnsatzInfeasibleError: t hors de portée
    """
    lo = max(0.0, 2.0 * e - 1.0)
    hi = e
    t_lo = _bipodal_t(e, lo)
    t_hi = _bipodal_t(e, hi)
    slack = 1e-15
    if t < t_lo - slack or t > t_hi + slack:
        raise AnsatzInfeasibleError(detail=f"t = {t} hors de [{t_lo:.6g}, {t_hi:.6g}] à e = {e}")
    if t <= t_lo:
        return lo
    if t >= t_hi:
        return hi
    return brentq(lambda A: _bipodal_t(e, A) - t, lo, hi, xtol=1e-17, rtol=1e-15, maxiter=200)


def symmetric_bipodal_graphon(e: float, A: float) -> MultipodalGraphon:
    """c = (½, ½), B = [[A, 2e-A], [2e-A, A]]."""
    D = 2.0 * e - A
    if not (0.0 <= A <= 1.0 and 0.0 <= D <= 1.0):
        raise AnsatzInfeasibleError(detail=f"blocs hors de [0, 1]: A={A}, D={D}")
    return MultipodalGraphon([0.5, 0.5], [[A, D], [D, A]])


def seed_multipliers(g: MultipodalGraphon) -> Optional[Multipliers]:
    """Multiplicateurs extraits de la graine; None si saturée ou système dégénéré."""
    try:
        mult = extract_multipliers(g)
    except SaturatedGraphonError:
        return None
    return None if mult.degenerate else mult


# =============================================================================
# GRAINES
# =============================================================================

def structured_seeds(e: float, t: float, k: int, softening: float) -> List[Seed]:
    """
    Graines déterministes adaptées à la région de (e, t).

    Les blocs 0/1 sont ramenés dans [softening, 1-softening] puis le graphon
    est raffiné jusqu'à k podes. Les multiplicateurs extraits de la graine
    adoucie servent de point de départ à λ.
    """
    seeds: List[Seed] = []
    p = min(max(e, softening), 1.0 - softening)

    def add(label: str, g: MultipodalGraphon, mult: Optional[Multipliers] = None, exact: bool = False):
        if g.k > k:
            return
        g = g if exact else soften(g, softening)
        if mult is None:
            mult = seed_multipliers(g)
        seeds.append(Seed(label, embed(g, k), mult))

    add("er", MultipodalGraphon.constant(p))

    t_er = e ** 3
    if 0.0 < e <= 0.5 and t <= t_er and k >= 2:
        try:
            A = symmetric_bipodal_root(e, t)
            exact = symmetric_bipodal_graphon(e, A)
            add("symmetric_bipodal", exact, seed_multipliers(exact), exact=True)
        except AnsatzInfeasibleError as exc:
            logger.debug(f"Graine bipodale écartée: {exc}")
        add("bottom_flat", reference_graphon("bottom_flat", e))

    if 0.5 < e < 1.0 and t < t_er:
        n = scallop_index(e)
        if k >= n + 2:
            try:
                c = scallop_width_for(n, e, t)
            except ValueError:
                c = scallop_params(e).c0
            try:
                add("scallop", scallop_family_graphon(n, e, c))
            except ValueError as exc:
                logger.debug(f"Graine scallop écartée: {exc}")

    if 0.0 < e < 1.0 and t > t_er and k >= 2:
        add("top", reference_graphon("top", e))

    return seeds


def perturbed_er_seed(e: float, k: int, rng: np.random.Generator, softening: float) -> Seed:
    """Constante e ± 0.05 (signes aléatoires), largeurs égales."""
    signs = rng.choice([-1.0, 1.0], size=(k, k))
    signs = np.triu(signs) + np.triu(signs, 1).T
    B = np.clip(e + PERTURBATION * signs, softening, 1.0 - softening)
    return Seed("er_perturbed", MultipodalGraphon.from_widths(np.ones(k), B))


def random_seed(k: int, rng: np.random.Generator) -> Seed:
    """Largeurs Dirichlet(1), blocs uniformes sur [0.02, 0.98]."""
    widths = rng.dirichlet(np.ones(k))
    B = rng.uniform(0.02, 0.98, size=(k, k))
    B = np.triu(B) + np.triu(B, 1).T
    return Seed("random", MultipodalGraphon.from_widths(np.maximum(widths, 1e-3), B))


def seed_list(e: float, t: float, k: int, n_starts: int, seed: int, stream: int, softening: float) -> List[Seed]:
    """Graines structurées puis aléatoires, n_starts au total."""
    seeds = structured_seeds(e, t, k, softening)
    index = len(seeds)
    seeds.append(perturbed_er_seed(e, k, start_rng(seed, stream, k, index), softening))
    while len(seeds) < n_starts:
        index = len(seeds)
        seeds.append(random_seed(k, start_rng(seed, stream, k, index)))
    return seeds[:n_starts]


def asymptotic_flat_block(e: float, t: float) -> float:
    """A ≈ t / (3e²) près du bord plat."""
    return t / (3.0 * e * e)

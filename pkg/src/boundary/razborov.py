"""Graphon Entropy v1.0 — Géométrie du triangle de Razborov

Formes closes du domaine atteignable des densités (e, t):

- bord supérieur t = e^{3/2} (clique de taille √e)
- courbe d'Erdős–Rényi t = e³
- bord inférieur: plat (t = 0) pour e ≤ ½, puis « scallops » entre les
  cusps e = n/(n+1) et e = (n+1)/(n+2)

Sur le scallop n, la famille (n+2)-podale (n podes de largeur c, deux de
largeur (1-nc)/2) a pour densité de triangles
    t(c) = n(n+1)(n+2)c³ - 3n(n+1)c² + 3nec,
minimisée en c₀ = (1 + √(1 - (n+2)e/(n+1))) / (n+2).

Date: Octobre 2026
"""

import logging
import math
from dataclasses import dataclass
from typing import Iterable, Tuple

import numpy as np
import pandas as pd
from scipy.optimize import brentq

from src.errors import FlatRegionError
from src.graphon.entropy import binary_entropy
from src.graphon.multipodal import MultipodalGraphon

logger = logging.getLogger(__name__)

BOUNDARY_TOL = 1e-12
CUSP_TOL = 1e-12

REGIONS = ("bottom_flat", "scallop", "top", "er")


@dataclass(frozen=True)
class ScallopSpec:
    """Paramètres du scallop contenant e."""
    n: int
    e: float
    c0: float
    t0: float
    p: float
    at_cusp: bool = False


# =============================================================================
# SCALLOPS
# =============================================================================

def scallop_index(e: float) -> int:
    """n tel que n/(n+1) ≤ e < (n+1)/(n+2) (intervalles fermés à gauche)."""
    if e < 0.5:
        raise FlatRegionError(f"flat region: e = {e} < 1/2 has no scallop")
    if e >= 1.0:
        raise ValueError(f"e = {e} ≥ 1: pas de scallop")
    n = max(1, int(math.floor(e / (1.0 - e))))
    while n > 1 and n / (n + 1) > e:
        n -= 1
    while (n + 1) / (n + 2) <= e:
        n += 1
    return n


def scallop_cubic(n: int, e: float, c: float) -> float:
    """t(c) de la famille (n+2)-podale."""
    return n * (n + 1) * (n + 2) * c ** 3 - 3 * n * (n + 1) * c ** 2 + 3 * n * e * c


def scallop_cubic_derivatives(n: int, e: float, c: float) -> Tuple[float, float]:
    """(dt/dc, d²t/dc²)."""
    d1 = 3 * n * (n + 1) * (n + 2) * c ** 2 - 6 * n * (n + 1) * c + 3 * n * e
    d2 = 6 * n * (n + 1) * (n + 2) * c - 6 * n * (n + 1)
    return d1, d2


def scallop_p(n: int, e: float, c: float) -> float:
    """Valeur du bloc entre les deux grands podes: p = 2(e + nc² - 1 + (1-nc)²)/(1-nc)²."""
    r = 1.0 - n * c
    if r <= 0.0:
        raise ValueError(f"1 - nc = {r} ≤ 0")
    return 2.0 * (e + n * c * c - 1.0 + r * r) / (r * r)


def scallop_dp_dc(n: int, e: float, c: float) -> float:
    return 4.0 * n * (c + e - 1.0) / (1.0 - n * c) ** 3


def _scallop_c0(n: int, e: float) -> float:
    disc = 1.0 - (n + 2) * e / (n + 1)
    return (1.0 + math.sqrt(max(disc, 0.0))) / (n + 2)


def scallop_params(e: float) -> ScallopSpec:
    """
    Paramètres (n, c₀, t₀, p) du scallop contenant e.

    Args:
        e: densité d'arêtes, ½ ≤ e < 1

    Raises:
        FlatRegionError: e < ½ (utiliser min_triangle_density)
        ValueError: e ≥ 1
    """
    n = scallop_index(e)
    c0 = _scallop_c0(n, e)
    t0 = max(scallop_cubic(n, e, c0), 0.0)
    p = min(max(scallop_p(n, e, c0), 0.0), 1.0)
    at_cusp = abs(e - n / (n + 1)) < CUSP_TOL
    if at_cusp:
        logger.debug(f"e = {e} sur le cusp n={n}: aucune garantie théorique")
    return ScallopSpec(n=n, e=float(e), c0=c0, t0=t0, p=p, at_cusp=at_cusp)


def scallop_family_graphon(n: int, e: float, c: float) -> MultipodalGraphon:
    """Membre de largeur c de la famille (n+2)-podale à densité e."""
    w = (1.0 - n * c) / 2.0
    if c <= 0.0 or w <= 0.0:
        raise ValueError(f"Largeurs invalides: c={c}, (1-nc)/2={w}")
    p = scallop_p(n, e, c)
    if p < -1e-12 or p > 1.0 + 1e-12:
        raise ValueError(f"p = {p:.6g} hors de [0, 1] pour c = {c}")
    p = min(max(p, 0.0), 1.0)

    k = n + 2
    B = np.ones((k, k))
    np.fill_diagonal(B, 0.0)
    B[n, n + 1] = B[n + 1, n] = p
    widths = [c] * n + [w, w]
    return MultipodalGraphon.from_widths(widths, B)


def scallop_family_entropy(n: int, e: float, c: float) -> float:
    """S de la famille: ½(1-nc)² H(p)."""
    p = min(max(scallop_p(n, e, c), 0.0), 1.0)
    return 0.5 * (1.0 - n * c) ** 2 * binary_entropy(p)


def scallop_entropy_slope(n: int, e: float, c: float) -> float:
    """dS/dc = n((n+2)c-1) ln(1-p) + 2n(1-(n+1)c) ln p le long de la famille."""
    p = scallop_p(n, e, c)
    if not 0.0 < p < 1.0:
        raise ValueError(f"dS/dc non définie pour p = {p}")
    return n * ((n + 2) * c - 1.0) * math.log(1.0 - p) + 2.0 * n * (1.0 - (n + 1) * c) * math.log(p)


def scallop_width_for(n: int, e: float, t: float) -> float:
    """
    Largeur c ≤ c₀ de la famille atteignant la densité de triangles t.

    Branche décroissante de t(c) entre le maximum local c₁ (ou la largeur
    où p atteint 1) et c₀; sert de graine près du bord inférieur.
    """
    c0 = _scallop_c0(n, e)
    t0 = scallop_cubic(n, e, c0)
    if t <= t0:
        return c0

    disc = 1.0 - (n + 2) * e / (n + 1)
    c_lo = (1.0 - math.sqrt(max(disc, 0.0))) / (n + 2)
    q_disc = n * n - (n * n + 2 * n) * (2.0 * e - 1.0)
    if q_disc >= 0.0:
        c_p1 = (n - math.sqrt(q_disc)) / (n * n + 2 * n)
        c_lo = max(c_lo, c_p1)
    c_lo = max(c_lo, 1e-12)

    if scallop_cubic(n, e, c_lo) < t:
        raise ValueError(f"t = {t} hors de portée de la famille du scallop {n} à e = {e}")
    return brentq(lambda c: scallop_cubic(n, e, c) - t, c_lo, c0, xtol=1e-15, rtol=1e-15)


def cusp_graphon(n: int) -> MultipodalGraphon:
    """Graphon (n+1)-partite complet: e = n/(n+1), τ = (n+1)n(n-1)/(n+1)³, S = 0."""
    if n < 1:
        raise ValueError("n ≥ 1 requis")
    k = n + 1
    B = np.ones((k, k)) - np.eye(k)
    return MultipodalGraphon.from_widths([1.0] * k, B)


# =============================================================================
# BORDS
# =============================================================================

def min_triangle_density(e: float) -> float:
    """t_min(e): 0 pour e ≤ ½, t₀ du scallop sinon."""
    if e < 0.0 or e > 1.0:
        raise ValueError(f"e = {e} hors de [0, 1]")
    if e <= 0.5:
        return 0.0
    if e >= 1.0:
        return 1.0
    return scallop_params(e).t0


def max_triangle_density(e: float) -> float:
    """t_max(e) = e^{3/2}."""
    if e < 0.0 or e > 1.0:
        raise ValueError(f"e = {e} hors de [0, 1]")
    return e ** 1.5


def er_curve(e: float) -> float:
    """Courbe d'Erdős–Rényi t = e³."""
    if e < 0.0 or e > 1.0:
        raise ValueError(f"e = {e} hors de [0, 1]")
    return e ** 3


def contains(e: float, t: float) -> bool:
    """(e, t) appartient au domaine atteignable (tolérance 1e-12 sur les bords)."""
    if not (0.0 <= e <= 1.0) or not np.isfinite(t):
        return False
    return min_triangle_density(e) - BOUNDARY_TOL <= t <= max_triangle_density(e) + BOUNDARY_TOL


def infeasibility_message(e: float, t: float) -> str:
    """Message utilisateur pour un point hors domaine."""
    if not 0.0 <= e <= 1.0:
        return f"edge density {e} outside [0, 1]"
    t_min = min_triangle_density(e)
    if t < t_min:
        return f"below minimal triangle density {t_min:.6f}"
    return f"above maximal triangle density {max_triangle_density(e):.6f}"


# =============================================================================
# GRAPHONS DE RÉFÉRENCE
# =============================================================================

def reference_graphon(region: str, e: float) -> MultipodalGraphon:
    """
    Graphon extrémal de référence.

    - bottom_flat (e ≤ ½): c=(½,½), B=[[0,2e],[2e,0]]
    - scallop (½ ≤ e < 1): n+2 podes, 0 sur la diagonale, p sur le bloc
      (n+1, n+2), 1 ailleurs
    - top (0 < e < 1): c=(√e, 1-√e), B=[[1,0],[0,0]]
    - er (0 ≤ e ≤ 1): constant e
    """
    if region == "bottom_flat":
        if not 0.0 <= e <= 0.5:
            raise ValueError(f"bottom_flat exige 0 ≤ e ≤ ½, reçu {e}")
        return MultipodalGraphon([0.5, 0.5], [[0.0, 2 * e], [2 * e, 0.0]])

    if region == "scallop":
        spec = scallop_params(e)
        return scallop_family_graphon(spec.n, e, spec.c0)

    if region == "top":
        if not 0.0 < e < 1.0:
            raise ValueError(f"top exige 0 < e < 1, reçu {e}")
        s = math.sqrt(e)
        return MultipodalGraphon.from_widths([s, 1.0 - s], [[1.0, 0.0], [0.0, 0.0]])

    if region == "er":
        if not 0.0 <= e <= 1.0:
            raise ValueError(f"er exige 0 ≤ e ≤ 1, reçu {e}")
        return MultipodalGraphon.constant(e)

    raise ValueError(f"Région inconnue: {region} (attendu: {', '.join(REGIONS)})")


# =============================================================================
# BIPODAL À t = 0: COÛT DE L'ASYMÉTRIE
# =============================================================================

def flat_asymmetry_entropy(e: float, c: float) -> float:
    """S(e, 0, c) = ½(1 - 4Δc²) H(2e / (1 - 4Δc²)), Δc = c - ½."""
    shrink = 1.0 - 4.0 * (c - 0.5) ** 2
    x = 2.0 * e / shrink
    if not 0.0 < c < 1.0 or x > 1.0:
        raise ValueError(f"Bipodal à t = 0 impossible: e={e}, c={c}")
    return 0.5 * shrink * binary_entropy(x)


def flat_asymmetry_cost(e: float) -> float:
    """dS/d(Δc²) en Δc = 0: 2 ln(1 - 2e) < 0, la symétrie est optimale."""
    if not 0.0 < e < 0.5:
        raise ValueError(f"e = {e} hors de (0, ½)")
    return 2.0 * math.log(1.0 - 2.0 * e)


# =============================================================================
# TABLE
# =============================================================================

def boundary_table(e_values: Iterable[float]) -> pd.DataFrame:
    """Table e, t_min, t_er, t_max, n, c0, p (n = 0 et NaN dans la région plate)."""
    rows = []
    for e in e_values:
        e = float(e)
        row = {
            "e": e,
            "t_min": min_triangle_density(e),
            "t_er": er_curve(e),
            "t_max": max_triangle_density(e),
            "n": 0,
            "c0": np.nan,
            "p": np.nan,
        }
        if 0.5 <= e < 1.0:
            spec = scallop_params(e)
            row.update({"n": spec.n, "c0": spec.c0, "p": spec.p})
        rows.append(row)

    df = pd.DataFrame(rows, columns=["e", "t_min", "t_er", "t_max", "n", "c0", "p"])
    logger.info(f"Table des bords: {len(df)} lignes")
    return df

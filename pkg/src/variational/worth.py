"""Graphon Entropy v1.0 — Worth des colonnes

Le worth d'une colonne a (constante par pode) relativement à (g, α, β):

    W(a) = Σ_i c_i (H(a_i) - α a_i) - (β/2) Σ_ij c_i c_j a_i a_j B_ij

À l'optimum, toutes les colonnes réelles (lignes de B) ont le même worth
et maximisent W. Les points stationnaires vérifient
    H'(a_i) = α + β (B (c∘a))_i  ⇔  a_i = σ(-α - β (B (c∘a))_i).

Date: Octobre 2026
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
from scipy.optimize import minimize
from scipy.special import expit, logit

from src.graphon.entropy import binary_entropy, entropy_from_logit, logistic_slope
from src.graphon.multipodal import ColumnProfile, MultipodalGraphon
from .multipliers import Multipliers, el_residual

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

try:
    from config import VARIATIONAL
except ImportError:
    VARIATIONAL = {
        "damping": 0.5,
        "max_iter": 10000,
        "fp_tol": 1e-12,
        "newton_tol": 1e-9,
        "dedup_tol": 1e-5,
        "worth_starts": 16,
        "hessian_tol": 1e-9,
        "optimality_tol": 1e-6,
    }

logger = logging.getLogger(__name__)

LOGIT_BOUND = 40.0


@dataclass
class WorthMaximizer:
    """Maximum local du worth."""
    profile: ColumnProfile
    worth: float
    logits: np.ndarray = field(repr=False, default=None)


@dataclass
class WorthSearchResult:
    """Résultat de maximize_worth."""
    maximizers: List[WorthMaximizer]
    n_starts: int
    failed: int = 0
    saddles: int = 0

    @property
    def best_worth(self) -> float:
        return self.maximizers[0].worth if self.maximizers else float("-inf")


@dataclass
class VariationalDiagnostics:
    """Diagnostics d'optimalité d'un graphon pour (α, β) donnés."""
    alpha: float
    beta: float
    el_residual: float
    worth_spread: float
    worth_gap: float
    pode_worths: List[float]
    n_maximizers: int
    failed_starts: int

    def is_optimal(self, tol: float = None) -> bool:
        tol = VARIATIONAL["optimality_tol"] if tol is None else tol
        return self.el_residual < tol and self.worth_spread < tol and self.worth_gap <= tol


# =============================================================================
# WORTH
# =============================================================================

def _worth_values(c: np.ndarray, B: np.ndarray, alpha: float, beta: float, a: np.ndarray) -> float:
    ca = c * a
    return float(np.sum(c * (binary_entropy(a) - alpha * a)) - 0.5 * beta * (ca @ B @ ca))


def worth(g: MultipodalGraphon, mult: Multipliers, a) -> float:
    """W(a) pour un profil de colonne (ColumnProfile ou séquence)."""
    profile = a if isinstance(a, ColumnProfile) else ColumnProfile(a)
    profile.check_against(g)
    return _worth_values(g.podes, g.blocks, mult.alpha, mult.beta, profile.values)


def pode_worths(g: MultipodalGraphon, mult: Multipliers) -> np.ndarray:
    """Worth de chaque colonne réelle (ligne i de B)."""
    return np.array([
        _worth_values(g.podes, g.blocks, mult.alpha, mult.beta, g.blocks[i])
        for i in range(g.k)
    ])


def worth_spread(g: MultipodalGraphon, mult: Multipliers) -> float:
    """max - min des worths de podes."""
    w = pode_worths(g, mult)
    return float(w.max() - w.min())


def worth_hessian(g: MultipodalGraphon, mult: Multipliers, a) -> np.ndarray:
    """∂²W/∂a_i∂a_j = c_i H''(a_i) δ_ij - β c_i c_j B_ij."""
    values = a.values if isinstance(a, ColumnProfile) else np.asarray(a, dtype=float)
    u = logit(np.clip(values, 1e-300, 1.0 - 1e-16))
    return _hessian_from_logits(g.podes, g.blocks, mult.beta, u)


def _hessian_from_logits(c: np.ndarray, B: np.ndarray, beta: float, u: np.ndarray) -> np.ndarray:
    slope = np.maximum(logistic_slope(u), 1e-300)
    return np.diag(-c / slope) - beta * np.outer(c, c) * B


# =============================================================================
# MAXIMISATION DU WORTH
# =============================================================================

def _fixed_point(c, B, alpha, beta, a0) -> Tuple[Optional[np.ndarray], np.ndarray]:
    """Itération amortie a ← (1-ω) a + ω σ(-α - β B(c∘a)). Renvoie (a, logits) ou (None, _)."""
    omega = VARIATIONAL["damping"]
    a = np.array(a0, dtype=float)
    u = -alpha - beta * (B @ (c * a))
    for _ in range(VARIATIONAL["max_iter"]):
        target = expit(u)
        a_new = (1.0 - omega) * a + omega * target
        step = np.max(np.abs(a_new - a))
        a = a_new
        u = -alpha - beta * (B @ (c * a))
        if step < VARIATIONAL["fp_tol"]:
            return expit(u), u
    return None, u


def _logit_residual(c, B, alpha, beta, u) -> np.ndarray:
    return u + alpha + beta * (B @ (c * expit(u)))


def _ascent_fallback(c, B, alpha, beta, a0) -> Tuple[Optional[np.ndarray], np.ndarray]:
    """L-BFGS-B en variables logit puis Newton sur u + α + β B(c∘σ(u)) = 0."""
    def objective(u):
        a = expit(u)
        ca = c * a
        value = np.sum(c * (entropy_from_logit(u) - alpha * a)) - 0.5 * beta * (ca @ B @ ca)
        grad_a = c * (-u - alpha) - beta * c * (B @ ca)
        return -value, -grad_a * logistic_slope(u)

    u0 = logit(np.clip(a0, 1e-6, 1.0 - 1e-6))
    bounds = [(-LOGIT_BOUND, LOGIT_BOUND)] * c.size
    res = minimize(objective, u0, jac=True, method="L-BFGS-B", bounds=bounds,
                   options={"maxiter": 2000, "ftol": 1e-15, "gtol": 1e-12})
    u = res.x

    for _ in range(50):
        r = _logit_residual(c, B, alpha, beta, u)
        if np.max(np.abs(r)) < VARIATIONAL["newton_tol"]:
            return expit(u), u
        J = np.eye(c.size) + beta * B * (c * logistic_slope(u))[None, :]
        try:
            u = u - np.linalg.solve(J, r)
        except np.linalg.LinAlgError:
            break
    r = _logit_residual(c, B, alpha, beta, u)
    if np.max(np.abs(r)) < VARIATIONAL["newton_tol"]:
        return expit(u), u
    return None, u


def maximize_worth(
    g: MultipodalGraphon,
    mult: Multipliers,
    starts: int = None,
    seed: int = 0,
) -> WorthSearchResult:
    """
    Maxima locaux du worth sur les profils de colonnes.

    Départs: chaque colonne réelle, a ≡ 0, a ≡ 1, puis `starts` profils
    aléatoires. Point fixe amorti, repli L-BFGS-B + Newton si pas de
    convergence; un point stationnaire n'est retenu que si sa Hessienne est
    semi-définie négative. Maxima dédoublonnés à 1e-5 (norme max), triés par
    worth décroissant.

    Args:
        g: graphon de référence
        mult: multiplicateurs (α, β)
        starts: nombre de départs aléatoires (défaut: config)
        seed: graine du générateur

    Returns:
        WorthSearchResult (maximizers, failed, saddles)
    """
    starts = VARIATIONAL["worth_starts"] if starts is None else starts
    c = g.podes
    B = g.blocks
    alpha, beta = mult.alpha, mult.beta

    rng = np.random.default_rng([seed, g.k])
    initial = [g.blocks[i].copy() for i in range(g.k)]
    initial += [np.zeros(g.k), np.ones(g.k)]
    initial += [rng.uniform(0.0, 1.0, g.k) for _ in range(starts)]

    found: List[WorthMaximizer] = []
    failed = 0
    saddles = 0

    for a0 in initial:
        a, u = _fixed_point(c, B, alpha, beta, a0)
        if a is None:
            a, u = _ascent_fallback(c, B, alpha, beta, a0)
        if a is None:
            failed += 1
            logger.debug(f"maximize_worth: départ {np.round(a0, 4)} non convergé")
            continue

        top_eig = float(np.max(np.linalg.eigvalsh(_hessian_from_logits(c, B, beta, u))))
        if top_eig > VARIATIONAL["hessian_tol"]:
            saddles += 1
            continue

        if any(np.max(np.abs(m.profile.values - a)) < VARIATIONAL["dedup_tol"] for m in found):
            continue
        found.append(WorthMaximizer(
            profile=ColumnProfile(a),
            worth=_worth_values(c, B, alpha, beta, a),
            logits=u,
        ))

    found.sort(key=lambda m: -m.worth)
    if failed:
        logger.warning(f"maximize_worth: {failed}/{len(initial)} départs non convergés")
    return WorthSearchResult(maximizers=found, n_starts=len(initial), failed=failed, saddles=saddles)


def worth_gap(g: MultipodalGraphon, mult: Multipliers, search: WorthSearchResult = None) -> float:
    """Meilleur worth trouvé moins meilleur worth de pode (≤ 0 à l'optimum, à tolérance près)."""
    search = maximize_worth(g, mult) if search is None else search
    return float(search.best_worth - np.max(pode_worths(g, mult)))


def diagnose(g: MultipodalGraphon, mult: Multipliers, starts: int = None) -> VariationalDiagnostics:
    """Suite complète: EL, dispersion des worths, écart au meilleur worth."""
    worths = pode_worths(g, mult)
    search = maximize_worth(g, mult, starts=starts)
    gap = worth_gap(g, mult, search)
    return VariationalDiagnostics(
        alpha=mult.alpha,
        beta=mult.beta,
        el_residual=el_residual(g, mult),
        worth_spread=float(worths.max() - worths.min()),
        worth_gap=gap,
        pode_worths=[float(w) for w in worths],
        n_maximizers=len(search.maximizers),
        failed_starts=search.failed,
    )

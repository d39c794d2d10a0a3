"""Graphon Entropy v1.0 — Lagrangien augmenté et polish KKT

Étape 1, Lagrangien augmenté sur x = [u, v]:
    min  -S(x) + λ·h(x) + (μ/2)|h(x)|²,   h = (ε - e, τ - t)
    sous-problème: L-BFGS-B, logits bornés à ±40
    si |h| a été divisé par 4 au moins: λ ← λ + μ h, sinon μ ← 10 μ
    Tout graphon constant est stationnaire pour la pénalité quels que soient
    λ et μ: μ initial à 1e4, sinon le premier sous-problème y converge.

Étape 2, polish: système KKT réduit résolu par Levenberg–Marquardt
(inconnues [u, v, α, β], logits non bornés):
    u_b + α + β G_b = 0                 (EL, H'(σ(u)) = -u)
    W_rep(q) - W_rep(0) = 0             (worths égaux entre classes de podes)
    ε - e = 0,  τ - t = 0

Les multiplicateurs sortent comme α = λ₁, β = 3 λ₂.

Date: Octobre 2026
"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.optimize import least_squares, minimize
from scipy.special import expit

from src.graphon.entropy import entropy_from_logit
from src.graphon.densities import overlap_arrays
from .structure import BlockStructure

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

try:
    from config import SOLVER
except ImportError:
    SOLVER = {
        "mu_init": 1e4,
        "mu_growth": 10.0,
        "mu_shrink": 0.25,
        "mu_max": 1e12,
        "mu_restart": 1e6,
        "max_outer": 30,
        "inner_maxiter": 3000,
        "logit_clamp": 40.0,
        "share_clamp": 30.0,
        "tol": 1e-8,
        "polish_tol": 1e-10,
    }

logger = logging.getLogger(__name__)


@dataclass
class AugLagOutcome:
    """Sortie du Lagrangien augmenté."""
    x: np.ndarray
    entropy: float
    constraint_error: Tuple[float, float]
    lam: np.ndarray
    outer_iterations: int
    converged: bool

    @property
    def alpha(self) -> float:
        return float(self.lam[0])

    @property
    def beta(self) -> float:
        return float(3.0 * self.lam[1])


@dataclass
class PolishOutcome:
    """Sortie du polish KKT."""
    x: np.ndarray
    alpha: float
    beta: float
    residual: float
    success: bool


def augmented_lagrangian(
    structure: BlockStructure,
    x0: np.ndarray,
    e: float,
    t: float,
    lam0: Optional[np.ndarray] = None,
    tol: float = None,
    settings: Optional[dict] = None,
) -> AugLagOutcome:
    """
    Maximise S sous ε = e, τ = t dans l'espace réduit de `structure`.

    Args:
        structure: classes de blocs/podes
        x0: point de départ
        e, t: cibles
        lam0: multiplicateurs initiaux (λ₁, λ₂), défaut 0
        tol: tolérance sur max |h|
        settings: surcharge de SOLVER

    Returns:
        AugLagOutcome
    """
    cfg = {**SOLVER, **(settings or {})}
    tol = cfg["tol"] if tol is None else tol
    target = np.array([e, t])
    lam = np.zeros(2) if lam0 is None else np.array(lam0, dtype=float)
    mu = cfg["mu_init"]
    bounds = structure.bounds(cfg["logit_clamp"], cfg["share_clamp"])
    x = np.clip(np.asarray(x0, dtype=float), [b[0] for b in bounds], [b[1] for b in bounds])

    def objective(z):
        ev = structure.evaluate(z)
        h = np.array([ev.edge, ev.triangle]) - target
        w = lam + mu * h
        value = -ev.entropy + lam @ h + 0.5 * mu * (h @ h)
        grad = -ev.grad_entropy + w[0] * ev.grad_edge + w[1] * ev.grad_triangle
        return value, grad

    h = np.full(2, np.inf)
    prev_err = np.inf
    outer = 0
    for outer in range(1, cfg["max_outer"] + 1):
        res = minimize(
            objective, x, jac=True, method="L-BFGS-B", bounds=bounds,
            options={"maxiter": cfg["inner_maxiter"], "ftol": 1e-16, "gtol": 1e-12, "maxcor": 30},
        )
        x = res.x
        ev = structure.evaluate(x)
        h = np.array([ev.edge, ev.triangle]) - target
        err = float(np.max(np.abs(h)))
        logger.debug(f"AL[{outer}] μ={mu:.1e} |h|={err:.2e} S={ev.entropy:.10f}")
        if err < tol:
            break
        if err <= cfg["mu_shrink"] * prev_err:
            lam = lam + mu * h
            prev_err = err
        else:
            mu = min(mu * cfg["mu_growth"], cfg["mu_max"])

    ev = structure.evaluate(x)
    err = (abs(ev.edge - e), abs(ev.triangle - t))
    return AugLagOutcome(
        x=x,
        entropy=ev.entropy,
        constraint_error=err,
        lam=lam,
        outer_iterations=outer,
        converged=max(err) < tol,
    )


# =============================================================================
# POLISH KKT
# =============================================================================

def _row_worths(c: np.ndarray, U: np.ndarray, alpha: float, beta: float) -> np.ndarray:
    """W_i des colonnes réelles, H calculée en logit."""
    B = expit(U)
    H = entropy_from_logit(U)
    base = H @ c - alpha * (B @ c)
    CB = B * c[None, :]
    quad = np.einsum("ij,ik,jk->i", CB, CB, B)
    return base - 0.5 * beta * quad


def kkt_residual(structure: BlockStructure, y: np.ndarray, e: float, t: float) -> np.ndarray:
    """Résidu du système KKT réduit en y = [x, α, β]."""
    x, alpha, beta = y[:-2], y[-2], y[-1]
    u, v = structure.split(x)
    c = structure.widths(v)
    U = structure.block_logits(u)
    B = expit(U)
    G = overlap_arrays(c, B)
    G = 0.5 * (G + G.T)

    reps = structure.representatives()
    el = np.array([u[b] + alpha + beta * G[i, j] for b, (i, j) in enumerate(reps)])

    parts = [el]
    if structure.n_pode_classes > 1:
        W = _row_worths(c, U, alpha, beta)
        heads = [members[0] for members in structure.pode_classes]
        parts.append(W[heads[1:]] - W[heads[0]])

    E = c @ B @ c
    M = B * c[None, :]
    T = np.trace(M @ M @ M)
    parts.append(np.array([E - e, T - t]))
    return np.concatenate(parts)


def kkt_polish(
    structure: BlockStructure,
    x0: np.ndarray,
    alpha0: float,
    beta0: float,
    e: float,
    t: float,
    polish_tol: float = None,
) -> PolishOutcome:
    """Levenberg–Marquardt sur le système KKT carré, sans borne sur les logits."""
    polish_tol = SOLVER["polish_tol"] if polish_tol is None else polish_tol
    y0 = np.concatenate([np.asarray(x0, dtype=float), [alpha0, beta0]])

    try:
        sol = least_squares(
            lambda y: kkt_residual(structure, y, e, t),
            y0,
            method="lm",
            xtol=1e-15,
            ftol=1e-15,
            gtol=1e-15,
            max_nfev=200 * y0.size,
            x_scale="jac",
        )
        y = sol.x
    except (ValueError, FloatingPointError) as exc:
        logger.debug(f"Polish KKT abandonné: {exc}")
        return PolishOutcome(x=np.asarray(x0), alpha=alpha0, beta=beta0, residual=np.inf, success=False)

    residual = float(np.max(np.abs(kkt_residual(structure, y, e, t))))
    ok = bool(np.all(np.isfinite(y))) and residual < polish_tol
    return PolishOutcome(x=y[:-2], alpha=float(y[-2]), beta=float(y[-1]), residual=residual, success=ok)

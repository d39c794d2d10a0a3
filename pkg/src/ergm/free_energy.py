"""Graphon Entropy v1.0 — Énergie libre et maximisation ERGM

    F(g) = S(g) - α ε(g) - (β/3) τ(g)

maximize_free_energy cherche le maximum global de F à (α, β) fixés parmi:
- les candidats exacts g ≡ 0, g ≡ 1, g ≡ H'⁻¹(α), les graphons de cusp
  demandés et l'optimum contraint s'il est fourni
- des maxima locaux L-BFGS-B (logits) pour k = 1..k_max podes

Date: Octobre 2026
"""

import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize

from src.errors import SolverError
from src.graphon.entropy import binary_entropy_deriv1_inverse
from src.graphon.multipodal import MultipodalGraphon
from src.graphon.densities import canonicalize, entropy_arrays, shannon_entropy
from src.boundary.razborov import cusp_graphon
from src.variational.multipliers import Multipliers, el_residual
from src.variational.worth import worth_spread
from src.optimizer.seeds import random_seed, start_rng
from src.optimizer.solver import OptimizationResult, SolverOptions, count_distinct_optima
from src.optimizer.structure import embed, free_structure, soften

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

try:
    from config import ERGM
except ImportError:
    ERGM = {
        "visibility_tol": 1e-9,
        "marginal_tol": 1e-6,
        "k_max": 3,
        "n_starts": 8,
    }

logger = logging.getLogger(__name__)


def free_energy_arrays(c: np.ndarray, B: np.ndarray, mult: Multipliers) -> float:
    """F pour des tableaux bruts."""
    E = float(c @ B @ c)
    M = B * c[None, :]
    T = float(np.trace(M @ M @ M))
    return entropy_arrays(c, B) - mult.alpha * E - mult.beta * T / 3.0


def free_energy(g: MultipodalGraphon, mult: Multipliers) -> float:
    """F(g) = S - αε - (β/3)τ."""
    return free_energy_arrays(g.podes, g.blocks, mult)


def _local_maximum(g0: MultipodalGraphon, mult: Multipliers, opts: SolverOptions) -> Tuple[MultipodalGraphon, bool]:
    """L-BFGS-B sur -F dans l'espace (logits de blocs, logits de tailles)."""
    structure = free_structure(g0.k)
    x0 = structure.encode(g0, opts.logit_clamp)

    def objective(x):
        ev = structure.evaluate(x)
        value = ev.entropy - mult.alpha * ev.edge - mult.beta * ev.triangle / 3.0
        grad = ev.grad_entropy - mult.alpha * ev.grad_edge - mult.beta * ev.grad_triangle / 3.0
        return -value, -grad

    res = minimize(
        objective, x0, jac=True, method="L-BFGS-B",
        bounds=structure.bounds(opts.logit_clamp, opts.share_clamp),
        options={"maxiter": opts.inner_maxiter, "ftol": 1e-15, "gtol": 1e-10},
    )
    return structure.graphon(res.x), bool(res.success)


def maximize_free_energy(
    mult: Multipliers,
    opts: SolverOptions = None,
    constrained: Optional[MultipodalGraphon] = None,
    cusp_orders: Sequence[int] = (),
    k_max: int = None,
    n_starts: int = None,
) -> OptimizationResult:
    """
    Maximum de F à (α, β) fixés.

    Args:
        mult: multiplicateurs (α, β)
        opts: SolverOptions (graine, bornes de logits)
        constrained: optimum contraint, ajouté aux candidats et aux départs
        cusp_orders: n des graphons de cusp (n+1)-partites à tester
        k_max, n_starts: podes max et départs aléatoires par k (défaut: config.ERGM)

    Returns:
        OptimizationResult (target None, free_energy renseignée)

    Raises:
        SolverError: aucun candidat d'énergie libre finie
    """
    opts = opts or SolverOptions()
    k_max = ERGM["k_max"] if k_max is None else k_max
    n_starts = ERGM["n_starts"] if n_starts is None else n_starts

    candidates: List[Tuple[str, MultipodalGraphon]] = [
        ("zero", MultipodalGraphon.constant(0.0)),
        ("one", MultipodalGraphon.constant(1.0)),
        ("pointwise", MultipodalGraphon.constant(binary_entropy_deriv1_inverse(mult.alpha))),
    ]
    candidates += [(f"cusp_{n}", cusp_graphon(n)) for n in cusp_orders]
    if constrained is not None:
        candidates.append(("constrained", constrained))

    converged = 0
    runs = 0
    for k in range(1, k_max + 1):
        starts = [embed(soften(MultipodalGraphon.constant(binary_entropy_deriv1_inverse(mult.alpha)), opts.seed_softening), k)]
        if constrained is not None and constrained.k <= k:
            starts.append(embed(soften(constrained, opts.seed_softening), k))
        for index in range(n_starts if k > 1 else 0):
            starts.append(random_seed(k, start_rng(opts.seed, opts.stream, k, 1000 + index)).graphon)
        for g0 in starts:
            g, ok = _local_maximum(g0, mult, opts)
            runs += 1
            converged += int(ok)
            candidates.append((f"lbfgs_k{k}", g))

    scored = [(label, g, free_energy(g, mult)) for label, g in candidates]
    scored = [item for item in scored if np.isfinite(item[2])]
    if not scored:
        raise SolverError("no finite free-energy candidate", [{"label": label} for label, _ in candidates])

    best_label, best, best_F = scored[0]
    for label, g, F in scored[1:]:
        if F > best_F + 1e-12:
            best_label, best, best_F = label, g, F

    graphon = canonicalize(best)
    near = [g for _, g, F in scored if F >= best_F - 1e-6]
    logger.debug(f"maximize_free_energy(α={mult.alpha:.6g}, β={mult.beta:.6g}): {best_label}, F={best_F:.10f}")
    if runs and not converged:
        logger.warning(f"maximize_free_energy: aucun des {runs} L-BFGS-B n'a convergé")

    return OptimizationResult(
        graphon=graphon,
        multipliers=mult,
        entropy=shannon_entropy(graphon),
        constraint_error=(float("nan"), float("nan")),
        el_residual=el_residual(graphon, mult),
        worth_spread=worth_spread(graphon, mult),
        n_starts=len(candidates),
        n_converged=converged,
        distinct_optima=count_distinct_optima(near, opts.premerge_tol, 1e-4),
        target=None,
        ansatz=f"free_energy:{best_label}",
        free_energy=free_energy(graphon, mult),
        starts=[{"label": label, "free_energy": F} for label, _, F in scored],
    )

"""Graphon Entropy v1.0 — Maximisation contrainte de l'entropie

Résout max S(g) sous ε(g) = e, τ(g) = t sur les graphons k-podaux:

1. Multi-start (graines structurées puis aléatoires), départs répartis sur
   un Pool si workers > 1
2. Polish KKT direct pour les graines porteuses de multiplicateurs, sinon
   Lagrangien augmenté sur la structure de blocs (auglag.py)
3. Polish KKT (Levenberg–Marquardt) après fusion préalable des podes
4. Élagage des podes de largeur < 1e-6 puis nouvelle résolution
5. Meilleur résultat par entropie, canonicalisé, diagnostics variationnels

Date: Octobre 2026
"""

import logging
from dataclasses import dataclass, field, replace
from functools import partial
from multiprocessing import Pool
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from src.errors import AnsatzInfeasibleError, InfeasiblePointError, SaturatedGraphonError, SolverError
from src.graphon.multipodal import MultipodalGraphon
from src.graphon.densities import canonicalize, edge_density, shannon_entropy, triangle_density
from src.boundary.razborov import (
    contains,
    infeasibility_message,
    scallop_family_graphon,
    scallop_params,
    scallop_width_for,
)
from src.variational.multipliers import Multipliers, el_residual, extract_multipliers
from src.variational.worth import worth_spread
from .auglag import augmented_lagrangian, kkt_polish
from .seeds import seed_list, seed_multipliers, start_rng, symmetric_bipodal_graphon, symmetric_bipodal_root
from .structure import AnsatzSpec, BlockStructure, free_structure, n2_symmetric_structure, soften

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

try:
    from config import SOLVER
except ImportError:
    SOLVER = {
        "n_starts": 24,
        "seed": 42,
        "tol": 1e-8,
        "k_max": 6,
        "k_limit": 8,
        "mu_init": 1e4,
        "mu_growth": 10.0,
        "mu_shrink": 0.25,
        "mu_max": 1e12,
        "mu_restart": 1e6,
        "max_outer": 30,
        "inner_maxiter": 3000,
        "logit_clamp": 40.0,
        "share_clamp": 30.0,
        "seed_softening": 1e-3,
        "polish": True,
        "polish_tol": 1e-10,
        "polish_entropy_slack": 1e-6,
        "premerge_tol": 1e-4,
        "prune_width": 1e-6,
        "distinct_entropy_tol": 1e-6,
        "distinct_block_tol": 1e-4,
        "tie_tol": 1e-8,
        "workers": 1,
    }

logger = logging.getLogger(__name__)


# =============================================================================
# OPTIONS ET RÉSULTATS
# =============================================================================

@dataclass(frozen=True)
class SolverOptions:
    """Options du solveur (défauts: config.SOLVER)."""
    n_starts: int = SOLVER["n_starts"]
    seed: int = SOLVER["seed"]
    tol: float = SOLVER["tol"]
    k_max: int = SOLVER["k_max"]
    stream: int = 0
    polish: bool = SOLVER["polish"]
    mu_init: float = SOLVER["mu_init"]
    mu_growth: float = SOLVER["mu_growth"]
    mu_shrink: float = SOLVER["mu_shrink"]
    mu_max: float = SOLVER["mu_max"]
    mu_restart: float = SOLVER["mu_restart"]
    max_outer: int = SOLVER["max_outer"]
    inner_maxiter: int = SOLVER["inner_maxiter"]
    logit_clamp: float = SOLVER["logit_clamp"]
    share_clamp: float = SOLVER["share_clamp"]
    seed_softening: float = SOLVER["seed_softening"]
    polish_tol: float = SOLVER["polish_tol"]
    polish_entropy_slack: float = SOLVER["polish_entropy_slack"]
    premerge_tol: float = SOLVER["premerge_tol"]
    prune_width: float = SOLVER["prune_width"]
    workers: int = SOLVER["workers"]

    def __post_init__(self):
        if self.n_starts < 1:
            raise ValueError(f"n_starts doit être ≥ 1, reçu {self.n_starts}")
        if not 1 <= self.k_max <= SOLVER["k_limit"]:
            raise ValueError(f"k_max doit être dans [1, {SOLVER['k_limit']}], reçu {self.k_max}")
        if not self.tol > 0:
            raise ValueError(f"tol doit être > 0, reçu {self.tol}")
        if self.workers < 1:
            raise ValueError(f"workers doit être ≥ 1, reçu {self.workers}")

    def with_(self, **changes) -> "SolverOptions":
        return replace(self, **changes)

    def auglag_settings(self) -> Dict[str, float]:
        return {
            "mu_init": self.mu_init,
            "mu_growth": self.mu_growth,
            "mu_shrink": self.mu_shrink,
            "mu_max": self.mu_max,
            "max_outer": self.max_outer,
            "inner_maxiter": self.inner_maxiter,
            "logit_clamp": self.logit_clamp,
            "share_clamp": self.share_clamp,
        }


@dataclass
class StartOutcome:
    """Issue d'un départ."""
    label: str
    graphon: MultipodalGraphon
    alpha: float
    beta: float
    entropy: float
    constraint_error: Tuple[float, float]
    converged: bool
    polished: bool
    outer_iterations: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "label": self.label,
            "k": self.graphon.k,
            "entropy": self.entropy,
            "constraint_error": list(self.constraint_error),
            "converged": self.converged,
            "polished": self.polished,
            "outer_iterations": self.outer_iterations,
        }


@dataclass
class OptimizationResult:
    """Graphon optimal et diagnostics."""
    graphon: MultipodalGraphon
    multipliers: Multipliers
    entropy: float
    constraint_error: Tuple[float, float]
    el_residual: float
    worth_spread: float
    n_starts: int
    n_converged: int
    distinct_optima: int
    target: Optional[Tuple[float, float]] = None
    ansatz: str = "free_k"
    free_energy: Optional[float] = None
    starts: List[Dict[str, Any]] = field(default_factory=list, repr=False)

    @property
    def k(self) -> int:
        return self.graphon.k

    @property
    def edge(self) -> float:
        return edge_density(self.graphon)

    @property
    def triangle(self) -> float:
        return triangle_density(self.graphon)


# =============================================================================
# UN DÉPART
# =============================================================================

def _is_free(structure: BlockStructure) -> bool:
    return structure.name.startswith("free")


def _direct_polish(
    structure: BlockStructure,
    x0: np.ndarray,
    lam0: np.ndarray,
    e: float,
    t: float,
    opts: SolverOptions,
    label: str,
) -> Optional[StartOutcome]:
    """Polish KKT lancé directement sur la graine et ses multiplicateurs."""
    target_structure, x = structure, x0
    if _is_free(structure):
        merged = canonicalize(structure.graphon(x0), opts.premerge_tol)
        target_structure = free_structure(merged.k)
        x = target_structure.encode(merged)
    pol = kkt_polish(target_structure, x, float(lam0[0]), 3.0 * float(lam0[1]), e, t, opts.polish_tol)
    if not pol.success:
        logger.debug(f"[{label}] polish direct non convergé (résidu {pol.residual:.2e})")
        return None
    g = target_structure.graphon(pol.x)
    err = (abs(edge_density(g) - e), abs(triangle_density(g) - t))
    if max(err) >= opts.tol or (_is_free(structure) and g.k > 1 and g.podes.min() < opts.prune_width):
        return None
    return StartOutcome(
        label=label + "+kkt",
        graphon=g,
        alpha=float(pol.alpha),
        beta=float(pol.beta),
        entropy=shannon_entropy(g),
        constraint_error=err,
        converged=True,
        polished=True,
        outer_iterations=0,
    )


def _run_start(
    structure: BlockStructure,
    x0: np.ndarray,
    lam0: Optional[np.ndarray],
    e: float,
    t: float,
    opts: SolverOptions,
    label: str,
) -> StartOutcome:
    """Polish direct si la graine a des multiplicateurs, sinon Lagrangien augmenté, polish KKT, élagage."""
    if opts.polish and lam0 is not None:
        direct = _direct_polish(structure, x0, lam0, e, t, opts, label)
        if direct is not None:
            return direct

    settings = opts.auglag_settings()
    al = augmented_lagrangian(structure, x0, e, t, lam0=lam0, tol=opts.tol, settings=settings)
    if not al.converged:
        retry = augmented_lagrangian(
            structure, x0, e, t, lam0=lam0, tol=opts.tol, settings={**settings, "mu_init": opts.mu_restart},
        )
        logger.debug(f"[{label}] relance μ={opts.mu_restart:.0e}: |h| {max(al.constraint_error):.1e} → {max(retry.constraint_error):.1e}")
        if retry.converged or max(retry.constraint_error) < max(al.constraint_error):
            al = retry
    g = structure.graphon(al.x)
    alpha, beta, entropy = al.alpha, al.beta, al.entropy
    polished = False

    if opts.polish:
        target_structure, x = structure, al.x
        if _is_free(structure):
            merged = canonicalize(g, opts.premerge_tol)
            target_structure = free_structure(merged.k)
            x = target_structure.encode(merged)
        pol = kkt_polish(target_structure, x, alpha, beta, e, t, opts.polish_tol)
        if pol.success:
            ev = target_structure.evaluate(pol.x)
            err = max(abs(ev.edge - e), abs(ev.triangle - t))
            if err < opts.tol and ev.entropy >= entropy - opts.polish_entropy_slack:
                g = target_structure.graphon(pol.x)
                alpha, beta, entropy = pol.alpha, pol.beta, ev.entropy
                polished = True
            else:
                logger.debug(f"[{label}] polish rejeté: erreur {err:.2e}, ΔS {ev.entropy - entropy:.2e}")
        else:
            logger.debug(f"[{label}] polish non convergé (résidu {pol.residual:.2e})")

    if _is_free(structure) and g.k > 1 and g.podes.min() < opts.prune_width:
        keep = g.podes >= opts.prune_width
        pruned = MultipodalGraphon.from_widths(g.podes[keep], g.blocks[np.ix_(keep, keep)])
        logger.debug(f"[{label}] élagage de {int((~keep).sum())} pode(s) fin(s)")
        smaller = free_structure(pruned.k)
        return _run_start(
            smaller, smaller.encode(pruned, opts.logit_clamp), np.array([alpha, beta / 3.0]),
            e, t, opts, label + "+pruned",
        )

    err = (abs(edge_density(g) - e), abs(triangle_density(g) - t))
    return StartOutcome(
        label=label,
        graphon=g,
        alpha=float(alpha),
        beta=float(beta),
        entropy=shannon_entropy(g),
        constraint_error=err,
        converged=max(err) < opts.tol,
        polished=polished,
        outer_iterations=al.outer_iterations,
    )


# =============================================================================
# ASSEMBLAGE
# =============================================================================

def _result_multipliers(g: MultipodalGraphon, alpha: Optional[float], beta: Optional[float]) -> Multipliers:
    """Multiplicateurs du solveur ou extraits, selon le plus petit résidu EL."""
    if g.k == 1:
        p = float(g.blocks[0, 0])
        if 0.0 < p < 1.0:
            return Multipliers.canonical_er(p)
        return Multipliers(alpha=0.0, beta=0.0, degenerate=True)

    candidates = []
    if alpha is not None and np.isfinite(alpha) and np.isfinite(beta):
        candidates.append(Multipliers(alpha=alpha, beta=beta))
    try:
        candidates.append(extract_multipliers(g))
    except SaturatedGraphonError:
        pass
    if not candidates:
        return Multipliers(alpha=0.0, beta=0.0, degenerate=True)
    return min(candidates, key=lambda m: el_residual(g, m))


def count_distinct_optima(graphons: List[MultipodalGraphon], merge_tol: float, block_tol: float) -> int:
    """Nombre de graphons distincts à block_tol près (norme max canonique)."""
    representatives: List[MultipodalGraphon] = []
    for g in graphons:
        h = canonicalize(g, merge_tol)
        if all(h.distance(r) > block_tol for r in representatives):
            representatives.append(h)
    return len(representatives)


def _assemble(
    outcomes: List[StartOutcome],
    e: float,
    t: float,
    opts: SolverOptions,
    ansatz: str,
) -> OptimizationResult:
    converged = [o for o in outcomes if o.converged]
    diagnostics = [o.to_dict() for o in outcomes]
    if not converged:
        raise SolverError(f"no start converged at (e={e}, t={t})", diagnostics)

    best = converged[0]
    for o in converged[1:]:
        if o.entropy > best.entropy + 1e-12:
            best = o

    graphon = canonicalize(best.graphon)
    mult = _result_multipliers(graphon, best.alpha, best.beta)

    near = [o.graphon for o in converged if o.entropy >= best.entropy - SOLVER["distinct_entropy_tol"]]
    distinct = count_distinct_optima(near, opts.premerge_tol, SOLVER["distinct_block_tol"])
    if distinct > 1:
        logger.warning(f"(e={e}, t={t}): {distinct} optima distincts à {SOLVER['distinct_entropy_tol']:.0e} près")

    return OptimizationResult(
        graphon=graphon,
        multipliers=mult,
        entropy=shannon_entropy(graphon),
        constraint_error=(abs(edge_density(graphon) - e), abs(triangle_density(graphon) - t)),
        el_residual=el_residual(graphon, mult),
        worth_spread=worth_spread(graphon, mult),
        n_starts=len(outcomes),
        n_converged=len(converged),
        distinct_optima=distinct,
        target=(float(e), float(t)),
        ansatz=ansatz,
        starts=diagnostics,
    )


# =============================================================================
# DÉPARTS EN PARALLÈLE
# =============================================================================

def _solve_task(
    task: Tuple[str, np.ndarray, Optional[np.ndarray]],
    structure: BlockStructure,
    e: float,
    t: float,
    opts: SolverOptions,
) -> StartOutcome:
    label, x0, lam0 = task
    outcome = _run_start(structure, x0, lam0, e, t, opts, label)
    logger.debug(
        f"{outcome.label}: S={outcome.entropy:.10f} err={max(outcome.constraint_error):.1e} "
        f"{'ok' if outcome.converged else 'échec'}"
    )
    return outcome


def run_starts(
    tasks: List[Tuple[str, np.ndarray, Optional[np.ndarray]]],
    structure: BlockStructure,
    e: float,
    t: float,
    opts: SolverOptions,
) -> List[StartOutcome]:
    """
    Exécute les départs (label, x0, λ0), en parallèle si opts.workers > 1.

    Chaque départ ne dépend que de sa tâche: le résultat est identique
    quel que soit le nombre de workers, dans l'ordre des tâches.
    """
    solve = partial(_solve_task, structure=structure, e=e, t=t, opts=opts)
    if opts.workers > 1 and len(tasks) > 1:
        p = Pool(min(opts.workers, len(tasks)))
        try:
            return p.map(solve, tasks)
        finally:
            p.close()
            p.join()
    return [solve(task) for task in tasks]


def _check_point(e: float, t: float) -> None:
    if not contains(e, t):
        raise InfeasiblePointError(infeasibility_message(e, t), e, t)


# =============================================================================
# API
# =============================================================================

def maximize_entropy(e: float, t: float, k: int, opts: SolverOptions = None) -> OptimizationResult:
    """
    Maximum d'entropie sur les graphons k-podaux à (ε, τ) = (e, t).

    Args:
        e, t: densités cibles (dans le triangle de Razborov)
        k: nombre de podes (1 ≤ k ≤ 8)
        opts: SolverOptions

    Returns:
        OptimizationResult (graphon canonicalisé, podes fusionnés)

    Raises:
        InfeasiblePointError: (e, t) hors du domaine
        SolverError: aucun départ n'a convergé
    """
    opts = opts or SolverOptions()
    _check_point(e, t)
    if not 1 <= k <= SOLVER["k_limit"]:
        raise ValueError(f"k doit être dans [1, {SOLVER['k_limit']}], reçu {k}")

    structure = free_structure(k)
    n_starts = min(opts.n_starts, 3) if k == 1 else opts.n_starts
    seeds = seed_list(e, t, k, n_starts, opts.seed, opts.stream, opts.seed_softening)

    tasks = []
    for index, seed in enumerate(seeds):
        lam0 = None
        if seed.multipliers is not None:
            lam0 = np.array([seed.multipliers.alpha, seed.multipliers.beta / 3.0])
        tasks.append((f"k{k}#{index}:{seed.label}", structure.encode(seed.graphon, opts.logit_clamp), lam0))
    outcomes = run_starts(tasks, structure, e, t, opts)

    result = _assemble(outcomes, e, t, opts, f"free_{k}")
    logger.info(
        f"maximize_entropy(e={e}, t={t}, k={k}): S={result.entropy:.10f}, "
        f"{result.n_converged}/{result.n_starts} départs convergés, k effectif {result.k}"
    )
    return result


def maximize_entropy_auto(e: float, t: float, opts: SolverOptions = None) -> OptimizationResult:
    """
    maximize_entropy pour k = 1..k_max; meilleure entropie, égalités
    (à tie_tol près) en faveur du plus petit k.
    """
    opts = opts or SolverOptions()
    _check_point(e, t)

    best: Optional[OptimizationResult] = None
    failures: List[Dict[str, Any]] = []
    for k in range(1, opts.k_max + 1):
        try:
            result = maximize_entropy(e, t, k, opts)
        except SolverError as exc:
            logger.debug(f"k={k}: {exc}")
            failures.extend(exc.diagnostics)
            continue
        if best is None or result.entropy > best.entropy + SOLVER["tie_tol"]:
            best = result

    if best is None:
        raise SolverError(f"no start converged at (e={e}, t={t}) for k ≤ {opts.k_max}", failures)
    return best


def ansatz_solve(e: float, t: float, ansatz: AnsatzSpec, opts: SolverOptions = None) -> OptimizationResult:
    """
    Résolution dans une famille réduite.

    - symmetric_bipodal: racine exacte de t = ¾AD² + ¼A³, D = 2e - A
    - n2_symmetric: Lagrangien augmenté + polish sur la structure (n, 2)
    - free_k: maximize_entropy

    Raises:
        InfeasiblePointError: (e, t) hors du domaine
        AnsatzInfeasibleError: t hors de portée de l'ansatz
    """
    opts = opts or SolverOptions()
    _check_point(e, t)

    if ansatz.kind == "free_k":
        return maximize_entropy(e, t, ansatz.k, opts)
    if ansatz.kind == "symmetric_bipodal":
        return _solve_symmetric_bipodal(e, t)
    return _solve_n2_symmetric(e, t, ansatz.n, opts)


def _solve_symmetric_bipodal(e: float, t: float) -> OptimizationResult:
    A = symmetric_bipodal_root(e, t)
    g = symmetric_bipodal_graphon(e, A)
    graphon = canonicalize(g)
    mult = _result_multipliers(graphon, None, None)
    return OptimizationResult(
        graphon=graphon,
        multipliers=mult,
        entropy=shannon_entropy(graphon),
        constraint_error=(abs(edge_density(graphon) - e), abs(triangle_density(graphon) - t)),
        el_residual=el_residual(graphon, mult),
        worth_spread=worth_spread(graphon, mult),
        n_starts=1,
        n_converged=1,
        distinct_optima=1,
        target=(float(e), float(t)),
        ansatz="symmetric_bipodal",
    )


def _n2_seeds(
    e: float, t: float, n: int, structure: BlockStructure, opts: SolverOptions,
) -> List[Tuple[str, np.ndarray, Optional[np.ndarray]]]:
    """Famille du scallop (largeur adaptée à t, puis c₀) avec ses multiplicateurs, puis points aléatoires."""
    seeds: List[Tuple[str, np.ndarray, Optional[np.ndarray]]] = []
    if 0.5 < e < 1.0:
        widths = []
        try:
            widths.append(scallop_width_for(n, e, t))
        except ValueError:
            pass
        spec = scallop_params(e)
        if spec.n == n:
            widths.append(spec.c0)
        for c in widths:
            try:
                g = soften(scallop_family_graphon(n, e, c), opts.seed_softening)
            except ValueError:
                continue
            mult = seed_multipliers(g)
            lam0 = None if mult is None else np.array([mult.alpha, mult.beta / 3.0])
            seeds.append(("scallop", structure.encode(g, opts.logit_clamp), lam0))

    index = len(seeds)
    while len(seeds) < opts.n_starts:
        rng = start_rng(opts.seed, opts.stream, structure.k, index)
        u = rng.uniform(-4.0, 4.0, structure.n_blocks)
        v = rng.normal(0.0, 1.0, structure.n_pode_classes - 1)
        seeds.append(("random", np.concatenate([u, v]), None))
        index += 1
    return seeds[: opts.n_starts]


def _solve_n2_symmetric(e: float, t: float, n: int, opts: SolverOptions) -> OptimizationResult:
    structure = n2_symmetric_structure(n)
    tasks = [
        (f"n2_{n}#{index}:{label}", x0, lam0)
        for index, (label, x0, lam0) in enumerate(_n2_seeds(e, t, n, structure, opts))
    ]
    outcomes = run_starts(tasks, structure, e, t, opts)
    try:
        result = _assemble(outcomes, e, t, opts, "n2_symmetric")
    except SolverError as exc:
        raise AnsatzInfeasibleError(detail=f"(n, 2) = ({n}, 2) à (e={e}, t={t}): {exc}") from exc
    logger.info(f"ansatz n2_symmetric(n={n}) à (e={e}, t={t}): S={result.entropy:.10f}")
    return result

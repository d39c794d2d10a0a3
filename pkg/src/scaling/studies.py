"""Graphon Entropy v1.0 — Études d'échelle près des bords

Trois études, chacune une suite de résolutions à distance décroissante Δ
du bord:

- flat (e < ½, Δ = t): bipodal symétrique exact, ΔB = S - ½H(2e),
  ΔB ~ t ln(1/t), β ~ ln(1/t) / (2e²)
- scallop (½ < e < 1, Δ = t - t₀): ansatz (n, 2), ΔB = S - S(référence),
  ΔB ~ √Δt, β ~ 1/√Δt
- top (Δ = e^{3/2} - t): bipodal libre, ΔB = S,
  ΔB ~ Δ ln(1/Δ), β/α → -2/√e

Les affirmations asymptotiques sont vérifiées comme tendances (rapports
entre décades), jamais comme constantes absolues.

Date: Octobre 2026
"""

import logging
import math
from dataclasses import dataclass, field
from functools import partial
from multiprocessing import Pool
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from scipy.stats import linregress

from src.errors import SolverError
from src.graphon.entropy import binary_entropy
from src.boundary.razborov import scallop_family_entropy, scallop_params
from src.optimizer.seeds import asymptotic_flat_block
from src.optimizer.solver import OptimizationResult, SolverOptions, ansatz_solve, maximize_entropy
from src.optimizer.structure import AnsatzSpec

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

try:
    from config import SCALING
except ImportError:
    SCALING = {
        "flat_t_values": [1e-3, 1e-4, 1e-5],
        "scallop_dt_values": [1e-3, 1e-4, 1e-5],
        "top_dt_values": [1e-2, 1e-3],
        "n_starts": 8,
    }

logger = logging.getLogger(__name__)

CSV_COLUMNS = ["delta", "beta", "alpha", "delta_B", "block_min", "block_max", "el_residual"]


@dataclass
class ScalingSample:
    """Une résolution à distance delta du bord."""
    delta: float
    beta: float
    alpha: float
    delta_B: float
    block_min: float
    block_max: float
    el_residual: float
    worth_spread: float
    aux: Dict[str, float] = field(default_factory=dict)


@dataclass
class ScalingReport:
    """Échantillons triés par delta décroissant et ajustement log-log de ΔB."""
    boundary: str
    e: float
    samples: List[ScalingSample] = field(default_factory=list)
    fitted_exponent: float = float("nan")
    fitted_r2: float = float("nan")

    def column(self, name: str) -> np.ndarray:
        """Valeurs d'un champ ou d'une entrée aux, dans l'ordre des échantillons."""
        if self.samples and name in self.samples[0].aux:
            return np.array([s.aux[name] for s in self.samples])
        return np.array([getattr(s, name) for s in self.samples])

    def to_frame(self, include_aux: bool = False) -> pd.DataFrame:
        rows = []
        for s in self.samples:
            row = {name: getattr(s, name) for name in CSV_COLUMNS}
            if include_aux:
                row.update(s.aux)
            rows.append(row)
        columns = CSV_COLUMNS + (sorted(self.samples[0].aux) if include_aux and self.samples else [])
        return pd.DataFrame(rows, columns=columns)

    def to_dict(self) -> dict:
        return {
            "boundary": self.boundary,
            "e": self.e,
            "fitted_exponent": self.fitted_exponent,
            "fitted_r2": self.fitted_r2,
            "samples": self.to_frame(include_aux=True).to_dict(orient="records"),
        }


def decade_ratios(values: Sequence[float]) -> List[float]:
    """Rapports successifs v[i+1] / v[i]."""
    values = list(values)
    return [values[i + 1] / values[i] for i in range(len(values) - 1)]


def _fit(report: ScalingReport) -> None:
    delta = report.column("delta")
    dB = report.column("delta_B")
    mask = (delta > 0) & (dB > 0)
    if mask.sum() < 2:
        return
    fit = linregress(np.log(delta[mask]), np.log(dB[mask]))
    report.fitted_exponent = float(fit.slope)
    report.fitted_r2 = float(fit.rvalue ** 2)


def _sample(delta: float, result: OptimizationResult, delta_B: float, aux: Dict[str, float]) -> ScalingSample:
    B = result.graphon.blocks
    return ScalingSample(
        delta=float(delta),
        beta=result.multipliers.beta,
        alpha=result.multipliers.alpha,
        delta_B=float(delta_B),
        block_min=float(B.min()),
        block_max=float(B.max()),
        el_residual=result.el_residual,
        worth_spread=result.worth_spread,
        aux={"entropy": result.entropy, "k": float(result.k), **aux},
    )


def _solve_sample(
    delta: float,
    solve: Callable[[float], OptimizationResult],
    describe: Callable[[float, OptimizationResult], ScalingSample],
) -> Tuple[Optional[ScalingSample], Optional[str], list]:
    """(échantillon, None, []) ou (None, message, diagnostics) en cas d'échec."""
    try:
        result = solve(delta)
    except (SolverError, ValueError) as exc:
        return None, str(exc), list(getattr(exc, "diagnostics", []))
    logger.debug(f"Δ={delta:.1e}: β={result.multipliers.beta:.6g}, S={result.entropy:.12f}")
    return describe(delta, result), None, []


def _run_study(
    boundary: str,
    e: float,
    deltas: Sequence[float],
    solve: Callable[[float], OptimizationResult],
    describe: Callable[[float, OptimizationResult], ScalingSample],
    workers: int = 1,
) -> ScalingReport:
    """Résout chaque Δ (en parallèle si workers > 1); l'échec d'un Δ arrête l'étude avec le rapport partiel."""
    report = ScalingReport(boundary=boundary, e=float(e))
    ordered = sorted(deltas, reverse=True)
    run = partial(_solve_sample, solve=solve, describe=describe)

    if workers > 1 and len(ordered) > 1:
        p = Pool(min(workers, len(ordered)))
        try:
            outcomes = p.map(run, ordered)
        finally:
            p.close()
            p.join()
    else:
        outcomes = [run(delta) for delta in ordered]

    for delta, (sample, error, diagnostics) in zip(ordered, outcomes):
        if sample is None:
            _fit(report)
            raise SolverError(
                f"{boundary} study failed at e={e}, delta={delta}: {error}",
                diagnostics,
                partial=report,
            )
        report.samples.append(sample)
    _fit(report)
    logger.info(f"Étude {boundary} (e={e}): exposant ajusté {report.fitted_exponent:.4f} (r²={report.fitted_r2:.4f})")
    return report


def _check_deltas(deltas: Sequence[float], upper: float, label: str) -> None:
    if not deltas:
        raise ValueError(f"{label}: liste vide")
    for d in deltas:
        if not 0.0 < d < upper:
            raise ValueError(f"{label}: {d} hors de (0, {upper:.6g})")


# =============================================================================
# RÉSOLUTIONS ET DESCRIPTIONS PAR ÉTUDE
# =============================================================================

def _solve_flat(t: float, e: float) -> OptimizationResult:
    return ansatz_solve(e, t, AnsatzSpec("symmetric_bipodal"))


def _describe_flat(t: float, result: OptimizationResult, e: float, base: float) -> ScalingSample:
    dB = result.entropy - base
    A = float(result.graphon.blocks[0, 0])
    log_inv = math.log(1.0 / t)
    return _sample(t, result, dB, {
        "A": A,
        "A_ratio": A / asymptotic_flat_block(e, t),
        "dB_ratio": dB / (t * log_inv),
        "beta_ratio": result.multipliers.beta * 2.0 * e * e / log_inv,
    })


def _solve_scallop(dt: float, e: float, t0: float, ansatz: AnsatzSpec, opts: SolverOptions) -> OptimizationResult:
    return ansatz_solve(e, t0 + dt, ansatz, opts)


def _describe_scallop(dt: float, result: OptimizationResult, base: float, n: int) -> ScalingSample:
    g = result.graphon
    return _sample(dt, result, result.entropy - base, {
        "beta_sqrt_dt": result.multipliers.beta * math.sqrt(dt),
        "diag_max": float(np.max(np.diag(g.blocks))),
        "c": float(np.min(g.podes)) if g.k == n + 2 else float("nan"),
    })


def _solve_top(dt: float, e: float, opts: SolverOptions) -> OptimizationResult:
    return maximize_entropy(e, e ** 1.5 - dt, 2, opts)


def _describe_top(dt: float, result: OptimizationResult, e: float) -> ScalingSample:
    mult = result.multipliers
    ratio = mult.beta / mult.alpha if mult.alpha != 0.0 else float("nan")
    return _sample(dt, result, result.entropy, {
        "beta_over_alpha": ratio,
        "beta_over_alpha_ratio": ratio / top_beta_over_alpha_limit(e),
        "dB_ratio": result.entropy / (dt * math.log(1.0 / dt)),
        "large_width": float(np.max(result.graphon.podes)),
    })


def top_beta_over_alpha_limit(e: float) -> float:
    """
    Limite de β/α sous le bord supérieur: -2/√e.

    Près de t = e^{3/2} l'optimum est bipodal, pode de largeur √e presque
    plein (B₁₁ → 1), reste presque vide. Sur les blocs presque vides,
    H'(B) ≈ ln(1/B) ≫ 1 et G ≈ 0 hors du pode plein, donc α ≈ ln(1/B₂₂);
    sur le pode plein G₁₁ ≈ √e et H'(B₁₁) ≈ -ln(1/(1-B₁₁)). L'équilibre
    des worths impose ln(1/(1-B₁₁)) ≈ ln(1/B₂₂), d'où α + β√e ≈ -α.
    """
    return -2.0 / math.sqrt(e)


# =============================================================================
# ÉTUDES
# =============================================================================

def flat_boundary_study(e: float, t_values: Sequence[float] = None, workers: int = 1) -> ScalingReport:
    """
    Bord plat t → 0 à e < ½ (bipodal symétrique exact).

    aux: A, A_ratio = A / (t/3e²), dB_ratio = ΔB / (t ln(1/t)),
    beta_ratio = β·2e² / ln(1/t)
    """
    if not 0.0 < e < 0.5:
        raise ValueError(f"flat_boundary_study exige 0 < e < ½, reçu {e}")
    t_values = SCALING["flat_t_values"] if t_values is None else list(t_values)
    _check_deltas(t_values, e ** 3, "t_values")
    base = 0.5 * binary_entropy(2.0 * e)
    return _run_study(
        "flat", e, t_values,
        partial(_solve_flat, e=e),
        partial(_describe_flat, e=e, base=base),
        workers,
    )


def scallop_study(e: float, dt_values: Sequence[float] = None, opts: SolverOptions = None) -> ScalingReport:
    """
    Au-dessus du scallop n à e (Δt = t - t₀), ansatz (n, 2).

    Les Δt sont répartis sur opts.workers processus, chaque résolution
    restant séquentielle.

    aux: beta_sqrt_dt = β√Δt, diag_max (plus grand bloc diagonal), c (petit pode)
    """
    spec = scallop_params(e)
    dt_values = SCALING["scallop_dt_values"] if dt_values is None else list(dt_values)
    _check_deltas(dt_values, 1e-2 + 1e-15, "dt_values")
    opts = opts or SolverOptions(n_starts=SCALING["n_starts"])
    base = scallop_family_entropy(spec.n, e, spec.c0)
    ansatz = AnsatzSpec("n2_symmetric", n=spec.n)
    return _run_study(
        "scallop", e, dt_values,
        partial(_solve_scallop, e=e, t0=spec.t0, ansatz=ansatz, opts=_inner_options(opts)),
        partial(_describe_scallop, base=base, n=spec.n),
        opts.workers,
    )


def top_boundary_study(e: float, dt_values: Sequence[float] = None, opts: SolverOptions = None) -> ScalingReport:
    """
    Sous le bord supérieur (Δ = e^{3/2} - t), bipodal libre.

    aux: beta_over_alpha (limite -2/√e, voir top_beta_over_alpha_limit),
    beta_over_alpha_ratio = (β/α) / (-2/√e), dB_ratio = ΔB / (Δ ln(1/Δ)),
    large_width (plus grand pode)
    """
    if not 0.0 < e < 1.0:
        raise ValueError(f"top_boundary_study exige 0 < e < 1, reçu {e}")
    dt_values = SCALING["top_dt_values"] if dt_values is None else list(dt_values)
    _check_deltas(dt_values, e ** 1.5 - e ** 3, "dt_values")
    opts = opts or SolverOptions(n_starts=SCALING["n_starts"])
    return _run_study(
        "top", e, dt_values,
        partial(_solve_top, e=e, opts=_inner_options(opts)),
        partial(_describe_top, e=e),
        opts.workers,
    )


def _inner_options(opts: SolverOptions) -> SolverOptions:
    """Départs séquentiels quand les Δ sont déjà répartis sur plusieurs processus."""
    return opts.with_(workers=1) if opts.workers > 1 else opts

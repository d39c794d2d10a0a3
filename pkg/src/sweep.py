"""Graphon Entropy v1.0 — Balayage du diagramme de phases

Grille (e, t) résolue cellule par cellule:
- e en boucle externe, t en boucle interne (ordre de sortie fixe)
- t absolu, ou relatif: t = t_min(e) + f (t_max(e) - t_min(e))
- cellules hors du triangle de Razborov ignorées (warning)
- chaque cellule tire son flux aléatoire de son indice: le CSV ne dépend
  pas du nombre de workers

Date: Octobre 2026
"""

import logging
from dataclasses import dataclass, field
from functools import partial
from multiprocessing import Pool
from pathlib import Path
from typing import Any, Dict, List, Tuple

import numpy as np
import pandas as pd

from src.boundary.razborov import contains, max_triangle_density, min_triangle_density
from src.errors import SolverError
from src.optimizer.solver import SolverOptions, maximize_entropy_auto
from src.phase.classify import classify
from src.reports.exports import SWEEP_COLUMNS, sweep_frame

import sys
sys.path.insert(0, str(Path(__file__).parent.parent))

try:
    from config import SWEEP
except ImportError:
    SWEEP = {"workers": 1}

logger = logging.getLogger(__name__)

T_MODES = ("absolute", "relative")


@dataclass
class SweepSpec:
    """Grille de balayage; en mode relatif t_min/t_max sont des fractions de [t_min(e), t_max(e)]."""
    e_min: float
    e_max: float
    e_steps: int
    t_min: float
    t_max: float
    t_steps: int
    t_mode: str = "absolute"
    opts: SolverOptions = field(default_factory=SolverOptions)
    workers: int = SWEEP["workers"]

    def __post_init__(self):
        if self.e_steps < 1 or self.t_steps < 1:
            raise ValueError(f"steps doit être ≥ 1, reçu e_steps={self.e_steps}, t_steps={self.t_steps}")
        if self.t_mode not in T_MODES:
            raise ValueError(f"t_mode inconnu: {self.t_mode} (attendu: {', '.join(T_MODES)})")
        for name in ("e_min", "e_max", "t_min", "t_max"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} = {value} hors de [0, 1]")
        if self.e_min > self.e_max or self.t_min > self.t_max:
            raise ValueError("intervalle vide: min > max")
        if self.workers < 1:
            raise ValueError(f"workers doit être ≥ 1, reçu {self.workers}")


def _axis(lo: float, hi: float, steps: int) -> np.ndarray:
    return np.linspace(lo, hi, steps) if steps > 1 else np.array([lo])


def build_grid(spec: SweepSpec) -> List[Tuple[float, float]]:
    """Cellules réalisables dans l'ordre (e externe, t interne)."""
    cells = []
    skipped = 0
    for e in _axis(spec.e_min, spec.e_max, spec.e_steps):
        e = float(e)
        for f in _axis(spec.t_min, spec.t_max, spec.t_steps):
            if spec.t_mode == "relative":
                lo, hi = min_triangle_density(e), max_triangle_density(e)
                t = lo + float(f) * (hi - lo)
            else:
                t = float(f)
            if not contains(e, t):
                logger.warning(f"Cellule (e={e:.6g}, t={t:.6g}) hors du domaine, ignorée")
                skipped += 1
                continue
            cells.append((e, t))
    if not cells:
        logger.warning("Aucune cellule réalisable dans la grille")
    elif skipped:
        logger.info(f"Grille: {len(cells)} cellules, {skipped} ignorées")
    return cells


def _failed_row(e: float, t: float) -> Dict[str, Any]:
    row = {name: np.nan for name in SWEEP_COLUMNS}
    row.update({"e": e, "t": t, "region_tag": "failed"})
    for name in ("k", "sym_n", "sym_m", "rank", "distinct_optima"):
        row[name] = None
    return row


def solve_cell(task: Tuple[int, float, float], opts: SolverOptions) -> Dict[str, Any]:
    """Résout et classe une cellule; SolverError → ligne NaN étiquetée 'failed'."""
    index, e, t = task
    try:
        result = maximize_entropy_auto(e, t, opts.with_(stream=index))
    except SolverError as exc:
        logger.warning(f"Cellule #{index} (e={e:.6g}, t={t:.6g}) en échec: {exc}")
        return _failed_row(e, t)

    label = classify(result)
    sym_n, sym_m = label.symmetry if label.symmetry is not None else (None, None)
    return {
        "e": e,
        "t": t,
        "entropy": result.entropy,
        "alpha": result.multipliers.alpha,
        "beta": result.multipliers.beta,
        "k": result.k,
        "sym_n": sym_n,
        "sym_m": sym_m,
        "rank": label.rank,
        "p2": label.order_param(2),
        "p3": label.order_param(3),
        "p4": label.order_param(4),
        "region_tag": label.region_tag,
        "el_residual": result.el_residual,
        "worth_spread": result.worth_spread,
        "distinct_optima": result.distinct_optima,
    }


def run_sweep(spec: SweepSpec) -> pd.DataFrame:
    """
    Balayage complet.

    Returns:
        DataFrame aux colonnes SWEEP_COLUMNS, une ligne par cellule
        réalisable, dans l'ordre de la grille
    """
    cells = build_grid(spec)
    tasks = [(index, e, t) for index, (e, t) in enumerate(cells)]
    opts = spec.opts.with_(workers=1) if spec.workers > 1 else spec.opts
    solve = partial(solve_cell, opts=opts)

    if spec.workers > 1 and len(tasks) > 1:
        p = Pool(min(spec.workers, len(tasks)))
        try:
            rows = p.map(solve, tasks)
        finally:
            p.close()
            p.join()
    else:
        rows = [solve(task) for task in tasks]

    df = sweep_frame(rows)
    failed = int((df["region_tag"] == "failed").sum()) if len(df) else 0
    logger.info(f"Balayage: {len(df)} cellules, {failed} en échec, {spec.workers} worker(s)")
    return df

"""Graphon Entropy v1.0 — Test d'invisibilité ERGM

Un point (e, t) est visible s'il existe (α, β) tels que l'optimum contraint
en (e, t) maximise l'énergie libre F = S - αε - (β/3)τ. Avec les
multiplicateurs de Lagrange de l'optimum contraint, on compare F(optimum)
au maximum de F trouvé parmi les concurrents (g ≡ 0, g ≡ 1, cusps voisins,
maxima locaux).

Date: Octobre 2026
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Optional, Tuple

import numpy as np
import pandas as pd

from src.errors import InfeasiblePointError, SolverError
from src.graphon.multipodal import MultipodalGraphon
from src.boundary.razborov import contains, infeasibility_message, scallop_index
from src.variational.multipliers import Multipliers
from src.optimizer.solver import OptimizationResult, SolverOptions, maximize_entropy_auto
from .free_energy import ERGM, free_energy, maximize_free_energy

logger = logging.getLogger(__name__)

GRID_COLUMNS = ["e", "t", "alpha", "beta", "visible", "margin"]


@dataclass
class InvisibilityReport:
    """Verdict de visibilité ERGM en (e, t)."""
    point: Tuple[float, float]
    multipliers: Multipliers
    constrained_entropy: float
    constrained_free_energy: float
    best_competitor: MultipodalGraphon
    competitor_free_energy: float
    visible: bool
    margin: float
    marginal: bool = False
    witness: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "e": self.point[0],
            "t": self.point[1],
            "alpha": self.multipliers.alpha,
            "beta": self.multipliers.beta,
            "degenerate_multipliers": self.multipliers.degenerate,
            "constrained_entropy": self.constrained_entropy,
            "constrained_free_energy": self.constrained_free_energy,
            "competitor_free_energy": self.competitor_free_energy,
            "best_competitor": self.best_competitor.to_dict(),
            "witness": self.witness,
            "visible": self.visible,
            "margin": self.margin,
            "marginal": self.marginal,
        }


def _cusp_orders(e: float) -> Tuple[int, ...]:
    """Cusps encadrant le scallop de e (e > ½)."""
    if not 0.5 < e < 1.0:
        return ()
    n = scallop_index(e)
    return (n, n + 1)


def _test_multipliers(e: float, constrained: OptimizationResult) -> Multipliers:
    mult = constrained.multipliers
    if (mult.degenerate or constrained.k == 1) and 0.0 < e < 1.0:
        return Multipliers.canonical_er(e)
    return mult


def invisibility_test(
    e: float,
    t: float,
    opts: SolverOptions = None,
    constrained: Optional[OptimizationResult] = None,
) -> InvisibilityReport:
    """
    Visibilité ERGM de (e, t).

    Args:
        e, t: point du domaine
        opts: SolverOptions de l'optimisation contrainte
        constrained: optimum contraint déjà calculé (sinon maximize_entropy_auto)

    Returns:
        InvisibilityReport (visible = F_con ≥ F_comp - 1e-9)

    Raises:
        InfeasiblePointError: (e, t) hors du domaine
        SolverError: optimisation contrainte en échec
    """
    if not contains(e, t):
        raise InfeasiblePointError(infeasibility_message(e, t), e, t)
    opts = opts or SolverOptions()
    constrained = constrained or maximize_entropy_auto(e, t, opts)

    mult = _test_multipliers(e, constrained)
    competitor = maximize_free_energy(mult, opts, constrained=constrained.graphon, cusp_orders=_cusp_orders(e))

    F_con = free_energy(constrained.graphon, mult)
    F_comp = float(competitor.free_energy)
    margin = F_comp - F_con
    visible = F_con >= F_comp - ERGM["visibility_tol"]
    marginal = abs(margin) < ERGM["marginal_tol"]
    if marginal and margin > ERGM["visibility_tol"]:
        logger.warning(f"(e={e}, t={t}): verdict marginal, écart d'énergie libre {margin:.2e}")

    logger.info(
        f"invisibility_test(e={e}, t={t}): α={mult.alpha:.6g}, β={mult.beta:.6g}, "
        f"{'visible' if visible else 'invisible'} (marge {margin:.3e}, témoin {competitor.ansatz})"
    )
    return InvisibilityReport(
        point=(float(e), float(t)),
        multipliers=mult,
        constrained_entropy=constrained.entropy,
        constrained_free_energy=F_con,
        best_competitor=competitor.graphon,
        competitor_free_energy=F_comp,
        visible=bool(visible),
        margin=float(margin),
        marginal=bool(marginal),
        witness=competitor.ansatz.split(":", 1)[-1],
    )


def invisibility_grid(points: Iterable[Tuple[float, float]], opts: SolverOptions = None) -> pd.DataFrame:
    """Tests sur une liste de points; points hors domaine ignorés, échecs en NaN."""
    rows: List[Dict[str, Any]] = []
    for e, t in points:
        e, t = float(e), float(t)
        try:
            report = invisibility_test(e, t, opts)
        except InfeasiblePointError as exc:
            logger.warning(f"Point ({e}, {t}) ignoré: {exc}")
            continue
        except SolverError as exc:
            logger.warning(f"Point ({e}, {t}) en échec: {exc}")
            rows.append({"e": e, "t": t, "alpha": np.nan, "beta": np.nan, "visible": None, "margin": np.nan})
            continue
        rows.append({
            "e": e,
            "t": t,
            "alpha": report.multipliers.alpha,
            "beta": report.multipliers.beta,
            "visible": report.visible,
            "margin": report.margin,
        })
    return pd.DataFrame(rows, columns=GRID_COLUMNS)

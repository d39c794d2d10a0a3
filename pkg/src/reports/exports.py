"""Graphon Entropy v1.0 — Exports JSON et CSV

- NaNSafeEncoder: NaN/inf → null, scalaires et tableaux numpy convertis
- Conversions des résultats (optimisation, phase, invisibilité, échelle)
- En-têtes CSV versionnés et écriture des DataFrames

Date: Octobre 2026
"""

import json
import logging
import math
from dataclasses import asdict, is_dataclass
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np
import pandas as pd

import sys
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

try:
    from config import SWEEP
except ImportError:
    SWEEP = {
        "float_format": "%.12g",
        "schema_version": "1",
    }

logger = logging.getLogger(__name__)

SCHEMA_VERSION = SWEEP["schema_version"]

SWEEP_COLUMNS = [
    "e", "t", "entropy", "alpha", "beta", "k", "sym_n", "sym_m", "rank",
    "p2", "p3", "p4", "region_tag", "el_residual", "worth_spread", "distinct_optima",
]
SWEEP_HEADER = ",".join(SWEEP_COLUMNS)
INTEGER_COLUMNS = ["k", "sym_n", "sym_m", "rank", "distinct_optima"]


# === CUSTOM JSON ENCODER ===

class NaNSafeEncoder(json.JSONEncoder):
    """Encode NaN et Infinity comme null pour JSON valide."""
    def default(self, obj):
        if isinstance(obj, np.integer):
            return int(obj)
        if isinstance(obj, np.floating):
            return self._clean(float(obj))
        if isinstance(obj, np.ndarray):
            return self._clean(obj.tolist())
        if isinstance(obj, np.bool_):
            return bool(obj)
        return super().default(obj)

    def encode(self, obj):
        return super().encode(self._clean(obj))

    def iterencode(self, obj, _one_shot=False):
        return super().iterencode(self._clean(obj), _one_shot)

    def _clean(self, obj):
        if isinstance(obj, dict):
            return {k: self._clean(v) for k, v in obj.items()}
        elif isinstance(obj, (list, tuple)):
            return [self._clean(v) for v in obj]
        elif isinstance(obj, np.ndarray):
            return self._clean(obj.tolist())
        elif isinstance(obj, (float, np.floating)):
            if math.isnan(obj) or math.isinf(obj):
                return None
            return float(obj)
        return obj


def to_json(payload: Any, indent: int = 2) -> str:
    return json.dumps(payload, indent=indent, cls=NaNSafeEncoder)


# =============================================================================
# CONVERSIONS
# =============================================================================

def phase_to_dict(label) -> Dict[str, Any]:
    return label.to_dict()


def result_to_dict(result, phase=None, diagnostics=None) -> Dict[str, Any]:
    """OptimizationResult → dict JSON (graphon, multiplicateurs, diagnostics, phase)."""
    data: Dict[str, Any] = {"schema_version": SCHEMA_VERSION}
    if result.target is not None:
        data["target"] = {"e": result.target[0], "t": result.target[1]}
    data.update({
        "graphon": result.graphon.to_dict(),
        "k": result.k,
        "entropy": result.entropy,
        "multipliers": result.multipliers.to_dict(),
        "constraint_error": list(result.constraint_error),
        "el_residual": result.el_residual,
        "worth_spread": result.worth_spread,
        "n_starts": result.n_starts,
        "n_converged": result.n_converged,
        "distinct_optima": result.distinct_optima,
        "ansatz": result.ansatz,
    })
    if result.free_energy is not None:
        data["free_energy"] = result.free_energy
    if phase is not None:
        data["phase"] = phase_to_dict(phase)
    if diagnostics is not None:
        data["diagnostics"] = asdict(diagnostics) if is_dataclass(diagnostics) else dict(diagnostics)
        data["diagnostics"]["starts"] = result.starts
    return data


def report_to_dict(report) -> Dict[str, Any]:
    """InvisibilityReport ou ScalingReport → dict JSON."""
    data = {"schema_version": SCHEMA_VERSION}
    data.update(report.to_dict())
    return data


# =============================================================================
# CSV
# =============================================================================

def sweep_frame(rows) -> pd.DataFrame:
    """Lignes de balayage → DataFrame aux colonnes SWEEP_COLUMNS (entiers nullables)."""
    df = pd.DataFrame(list(rows), columns=SWEEP_COLUMNS)
    for name in INTEGER_COLUMNS:
        df[name] = pd.array(df[name], dtype="Int64")
    return df


def write_csv(df: pd.DataFrame, path: Optional[Path] = None, float_format: str = None) -> str:
    """
    Écrit un DataFrame en CSV (sans index).

    Args:
        df: données
        path: fichier cible (None: renvoie seulement le texte)
        float_format: défaut config.SWEEP["float_format"]

    Returns:
        Le texte CSV

    Raises:
        OSError: chemin non inscriptible
    """
    float_format = SWEEP["float_format"] if float_format is None else float_format
    text = df.to_csv(index=False, float_format=float_format, lineterminator="\n")
    if path is not None:
        path = Path(path)
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        logger.info(f"CSV écrit: {path} ({len(df)} lignes)")
    return text


def write_json(payload: Any, path: Optional[Path] = None) -> str:
    """Sérialise avec NaNSafeEncoder; écrit dans path si donné."""
    text = to_json(payload)
    if path is not None:
        path = Path(path)
        with open(path, "w", encoding="utf-8") as f:
            f.write(text + "\n")
        logger.info(f"JSON écrit: {path}")
    return text

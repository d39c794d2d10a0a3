"""Graphon Entropy v1.0 — Validation des fichiers graphon

Valide et nettoie un graphon JSON avant usage:
- Vérifie les champs obligatoires (podes, blocks)
- Vérifie formes, finitude, largeurs positives, blocs dans [0, 1]
- Renormalise Σ c_i si l'écart est petit (warning), rejette sinon
- Symétrise les asymétries ≤ 1e-12, rejette au-delà
- Lit les multiplicateurs optionnels alpha/beta

Format:
    {"podes": [c_1, ..., c_k], "blocks": [[B_11, ...], ...], "alpha": a, "beta": b}

Date: Octobre 2026
"""

import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np

from src.errors import GraphonFormatError
from src.graphon.multipodal import MultipodalGraphon
from src.variational.multipliers import Multipliers

import sys
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

try:
    from config import GRAPHON
except ImportError:
    GRAPHON = {
        "sum_tol": 1e-12,
        "symmetry_tol": 1e-12,
        "renormalize_tol": 1e-9,
    }

logger = logging.getLogger(__name__)


@dataclass
class ValidationResult:
    """Résultat de validation."""
    is_valid: bool
    errors: List[str] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)
    cleaned_data: Optional[Dict[str, Any]] = None


@dataclass
class GraphonFile:
    """Graphon chargé et multiplicateurs éventuels."""
    graphon: MultipodalGraphon
    multipliers: Optional[Multipliers] = None
    warnings: List[str] = field(default_factory=list)


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool) and math.isfinite(value)


class GraphonValidator:
    """
    Validateur de graphons multipodaux.

    Example:
        >>> result = GraphonValidator().validate({"podes": [1.0], "blocks": [[0.5]]})
        >>> result.is_valid
        True
    """

    REQUIRED_FIELDS: List[str] = ["podes", "blocks"]
    OPTIONAL_FIELDS: List[str] = ["alpha", "beta"]

    def __init__(
        self,
        sum_tol: float = None,
        renormalize_tol: float = None,
        symmetry_tol: float = None,
    ):
        """
        Args:
            sum_tol: écart toléré sur Σ c_i sans avertissement
            renormalize_tol: écart max corrigé par renormalisation
            symmetry_tol: asymétrie max symétrisée
        """
        self.sum_tol = GRAPHON["sum_tol"] if sum_tol is None else sum_tol
        self.renormalize_tol = GRAPHON["renormalize_tol"] if renormalize_tol is None else renormalize_tol
        self.symmetry_tol = GRAPHON["symmetry_tol"] if symmetry_tol is None else symmetry_tol

    def validate(self, raw: Any) -> ValidationResult:
        """
        Valide un objet JSON décodé.

        Returns:
            ValidationResult; cleaned_data = {"graphon", "alpha", "beta"}
        """
        if not isinstance(raw, dict):
            return ValidationResult(is_valid=False, errors=[f"objet JSON attendu, reçu {type(raw).__name__}"])

        errors: List[str] = []
        warnings: List[str] = []

        # === 1. Champs ===
        for name in self.REQUIRED_FIELDS:
            if name not in raw:
                errors.append(f"champ manquant: {name}")
        for name in raw:
            if name not in self.REQUIRED_FIELDS + self.OPTIONAL_FIELDS:
                warnings.append(f"champ ignoré: {name}")
        if errors:
            return ValidationResult(is_valid=False, errors=errors, warnings=warnings)

        # === 2. Formes et types ===
        podes = raw["podes"]
        blocks = raw["blocks"]
        if not isinstance(podes, list) or not podes:
            errors.append("podes: liste non vide attendue")
        else:
            for i, value in enumerate(podes):
                if not _is_number(value):
                    errors.append(f"podes[{i}]: nombre fini attendu, reçu {value!r}")
        if errors:
            return ValidationResult(is_valid=False, errors=errors, warnings=warnings)

        k = len(podes)
        if not isinstance(blocks, list) or len(blocks) != k:
            errors.append(f"blocks: {k} lignes attendues")
        else:
            for i, row in enumerate(blocks):
                if not isinstance(row, list) or len(row) != k:
                    errors.append(f"blocks[{i}]: {k} valeurs attendues")
                    continue
                for j, value in enumerate(row):
                    if not _is_number(value):
                        errors.append(f"blocks[{i}][{j}]: nombre fini attendu, reçu {value!r}")
        if errors:
            return ValidationResult(is_valid=False, errors=errors, warnings=warnings)

        c = np.array(podes, dtype=float)
        B = np.array(blocks, dtype=float)

        # === 3. Largeurs ===
        for i in np.flatnonzero(c <= 0.0):
            errors.append(f"podes[{i}] = {c[i]:g} ≤ 0")
        gap = abs(c.sum() - 1.0)
        if gap > self.renormalize_tol:
            errors.append(f"Σ podes = {c.sum():.15g} (écart {gap:.3g} > {self.renormalize_tol:g})")
        elif gap > self.sum_tol:
            warnings.append(f"Σ podes = {c.sum():.15g}, renormalisé")
            c = c / c.sum()

        # === 4. Blocs ===
        for i, j in zip(*np.nonzero((B < 0.0) | (B > 1.0))):
            if i <= j:
                errors.append(f"blocks[{i}][{j}] = {B[i, j]:g} hors de [0, 1]")
        asym = np.abs(B - B.T)
        for i, j in zip(*np.nonzero(asym > self.symmetry_tol)):
            if i < j:
                errors.append(f"blocks[{i}][{j}] = {B[i, j]:g} ≠ blocks[{j}][{i}] = {B[j, i]:g}")
        B = 0.5 * (B + B.T)

        # === 5. Multiplicateurs ===
        present = [name for name in self.OPTIONAL_FIELDS if name in raw]
        for name in present:
            if not _is_number(raw[name]):
                errors.append(f"{name}: nombre fini attendu, reçu {raw[name]!r}")
        if len(present) == 1:
            errors.append(f"{present[0]} fourni sans {'beta' if present[0] == 'alpha' else 'alpha'}")

        if errors:
            return ValidationResult(is_valid=False, errors=errors, warnings=warnings)

        for w in warnings:
            logger.debug(f"graphon: {w}")

        return ValidationResult(
            is_valid=True,
            errors=[],
            warnings=warnings,
            cleaned_data={
                "graphon": MultipodalGraphon(c, B),
                "alpha": float(raw["alpha"]) if "alpha" in raw else None,
                "beta": float(raw["beta"]) if "beta" in raw else None,
            },
        )


def parse_graphon(text: str, source: str = "<graphon>", validator: GraphonValidator = None) -> GraphonFile:
    """
    Décode et valide un graphon JSON.

    Raises:
        GraphonFormatError: JSON invalide (ligne/colonne) ou champs invalides
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphonFormatError(
            f"{source}: JSON invalide",
            [f"ligne {exc.lineno}, colonne {exc.colno}: {exc.msg}"],
        ) from exc

    result = (validator or GraphonValidator()).validate(raw)
    if not result.is_valid:
        raise GraphonFormatError(f"{source}: graphon invalide", result.errors)

    data = result.cleaned_data
    multipliers = None
    if data["alpha"] is not None:
        multipliers = Multipliers(alpha=data["alpha"], beta=data["beta"])
    for w in result.warnings:
        logger.warning(f"{source}: {w}")
    return GraphonFile(graphon=data["graphon"], multipliers=multipliers, warnings=result.warnings)


def load_graphon(path, validator: GraphonValidator = None) -> GraphonFile:
    """
    Lit un fichier graphon JSON.

    Raises:
        GraphonFormatError: fichier illisible, JSON invalide ou champs invalides
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise GraphonFormatError(f"{path}: lecture impossible", [str(exc)]) from exc
    return parse_graphon(text, str(path), validator)

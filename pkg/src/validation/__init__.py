"""Graphon Entropy v1.0 — Validation Package

Validation et nettoyage des fichiers graphon JSON.
"""

from .graphon_validator import GraphonFile, GraphonValidator, ValidationResult, load_graphon, parse_graphon

__all__ = [
    "GraphonFile",
    "GraphonValidator",
    "ValidationResult",
    "load_graphon",
    "parse_graphon",
]

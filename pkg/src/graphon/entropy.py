"""Graphon Entropy v1.0 — Entropie binaire H(u)

H(u) = -[u ln u + (1-u) ln(1-u)], prolongée par continuité H(0) = H(1) = 0.

- H'(u) = ln(1-u) - ln(u) = -logit(u)
- H''(u) = -(1/u + 1/(1-u))

Les dérivées aux pôles u ∈ {0, 1} lèvent ValueError: l'optimiseur ne
les atteint jamais car il travaille en variables logit, où H'(σ(x)) = -x.

Date: Octobre 2026
"""

from typing import Union

import numpy as np
from scipy.special import entr, expit, logit

ArrayLike = Union[float, np.ndarray]


def _as_result(values: np.ndarray, scalar: bool) -> ArrayLike:
    return float(values) if scalar else values


def _check_unit_interval(u: np.ndarray) -> None:
    if np.any(np.isnan(u)) or np.any(u < 0.0) or np.any(u > 1.0):
        raise ValueError(f"H(u) définie sur [0, 1], reçu {u}")


def binary_entropy(u: ArrayLike) -> ArrayLike:
    """H(u) en nats, vectorisée. H(0.5) = ln 2."""
    arr = np.asarray(u, dtype=float)
    _check_unit_interval(arr)
    return _as_result(entr(arr) + entr(1.0 - arr), arr.ndim == 0)


def binary_entropy_deriv1(u: ArrayLike) -> ArrayLike:
    """H'(u) = ln(1-u) - ln(u). Pôle en 0 et 1."""
    arr = np.asarray(u, dtype=float)
    _check_unit_interval(arr)
    if np.any((arr == 0.0) | (arr == 1.0)):
        raise ValueError("H'(u) a un pôle en u ∈ {0, 1}")
    return _as_result(-logit(arr), arr.ndim == 0)


def binary_entropy_deriv2(u: ArrayLike) -> ArrayLike:
    """H''(u) = -(1/u + 1/(1-u)). Pôle en 0 et 1."""
    arr = np.asarray(u, dtype=float)
    _check_unit_interval(arr)
    if np.any((arr == 0.0) | (arr == 1.0)):
        raise ValueError("H''(u) a un pôle en u ∈ {0, 1}")
    return _as_result(-1.0 / (arr * (1.0 - arr)), arr.ndim == 0)


def binary_entropy_deriv1_inverse(y: ArrayLike) -> ArrayLike:
    """(H')^{-1}(y) = σ(-y): la valeur de bloc u telle que H'(u) = y."""
    arr = np.asarray(y, dtype=float)
    return _as_result(expit(-arr), arr.ndim == 0)


# =============================================================================
# PARAMÉTRISATION LOGIT
# =============================================================================

def entropy_from_logit(x: ArrayLike) -> ArrayLike:
    """H(σ(x)) sans perte de précision pour |x| grand.

    ln σ(x) = -softplus(-x), ln(1 - σ(x)) = -softplus(x).
    """
    arr = np.asarray(x, dtype=float)
    values = expit(arr) * np.logaddexp(0.0, -arr) + expit(-arr) * np.logaddexp(0.0, arr)
    return _as_result(values, arr.ndim == 0)


def logistic_slope(x: ArrayLike) -> ArrayLike:
    """σ'(x) = σ(x) σ(-x) = u(1-u), exact même quand σ(x) arrondit à 1."""
    arr = np.asarray(x, dtype=float)
    return _as_result(expit(arr) * expit(-arr), arr.ndim == 0)

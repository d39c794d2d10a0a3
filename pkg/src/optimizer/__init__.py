"""Graphon Entropy v1.0 — Optimizer Package

Maximisation contrainte de l'entropie: structures de blocs, Lagrangien
augmenté, polish KKT, multi-start et ansätze réduits.
"""

from .gradients import FunctionalGradients, functional_gradients, gradients_from_arrays, pair_multiplicity
from .structure import (
    AnsatzSpec,
    BlockStructure,
    free_structure,
    symmetric_bipodal_structure,
    n2_symmetric_structure,
    embed,
    soften,
)
from .auglag import AugLagOutcome, PolishOutcome, augmented_lagrangian, kkt_polish, kkt_residual
from .seeds import (
    Seed,
    seed_list,
    seed_multipliers,
    structured_seeds,
    symmetric_bipodal_root,
    symmetric_bipodal_graphon,
    asymptotic_flat_block,
)
from .solver import (
    SolverOptions,
    OptimizationResult,
    StartOutcome,
    maximize_entropy,
    maximize_entropy_auto,
    ansatz_solve,
    count_distinct_optima,
    run_starts,
)

__all__ = [
    "FunctionalGradients",
    "functional_gradients",
    "gradients_from_arrays",
    "pair_multiplicity",
    "AnsatzSpec",
    "BlockStructure",
    "free_structure",
    "symmetric_bipodal_structure",
    "n2_symmetric_structure",
    "embed",
    "soften",
    "AugLagOutcome",
    "PolishOutcome",
    "augmented_lagrangian",
    "kkt_polish",
    "kkt_residual",
    "Seed",
    "seed_list",
    "seed_multipliers",
    "structured_seeds",
    "symmetric_bipodal_root",
    "symmetric_bipodal_graphon",
    "asymptotic_flat_block",
    "SolverOptions",
    "OptimizationResult",
    "StartOutcome",
    "maximize_entropy",
    "maximize_entropy_auto",
    "ansatz_solve",
    "count_distinct_optima",
    "run_starts",
]

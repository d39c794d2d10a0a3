"""Tests de l'optimiseur (structures, graines, Lagrangien augmenté, multi-start)

Les cas lourds utilisent des SolverOptions réduites (peu de départs, k_max
petit).

Lancer avec: pytest tests/test_optimizer.py -v
"""

import math

import numpy as np
import pytest
from pathlib import Path
import sys

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.errors import AnsatzInfeasibleError, InfeasiblePointError
from src.graphon import MultipodalGraphon, edge_density, triangle_density, shannon_entropy
from src.boundary import scallop_params
from src.phase import detect_symmetry, rank
from src.scaling import top_beta_over_alpha_limit
from src.optimizer import (
    AnsatzSpec,
    SolverOptions,
    free_structure,
    symmetric_bipodal_structure,
    n2_symmetric_structure,
    embed,
    soften,
    augmented_lagrangian,
    kkt_polish,
    seed_list,
    seed_multipliers,
    structured_seeds,
    symmetric_bipodal_root,
    symmetric_bipodal_graphon,
    asymptotic_flat_block,
    maximize_entropy,
    maximize_entropy_auto,
    ansatz_solve,
    count_distinct_optima,
)


# =============================================================================
# FIXTURES
# =============================================================================

@pytest.fixture
def fast_opts():
    """Options réduites pour les tests."""
    return SolverOptions(n_starts=4, k_max=2)


def bisection_root(e: float, t: float, iterations: int = 200) -> float:
    """Oracle indépendant: bissection de ¾AD² + ¼A³ = t sur [max(0, 2e-1), e]."""
    lo, hi = max(0.0, 2 * e - 1), e
    f = lambda A: 0.75 * A * (2 * e - A) ** 2 + 0.25 * A ** 3 - t
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        if f(mid) > 0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


# =============================================================================
# OPTIONS ET STRUCTURES
# =============================================================================

class TestSolverOptions:
    """Validation des options."""

    def test_defaults_from_config(self):
        opts = SolverOptions()
        assert opts.seed == 42
        assert opts.k_max == 6
        assert opts.workers == 1

    def test_auglag_schedule(self):
        settings = SolverOptions().auglag_settings()
        assert settings["mu_init"] == 1e4
        assert settings["mu_shrink"] == 0.25
        assert settings["mu_max"] == 1e12

    @pytest.mark.parametrize("changes", [{"n_starts": 0}, {"k_max": 9}, {"k_max": 0}, {"tol": 0.0}, {"workers": 0}])
    def test_invalid(self, changes):
        with pytest.raises(ValueError):
            SolverOptions(**changes)

    def test_with_returns_copy(self):
        opts = SolverOptions()
        other = opts.with_(stream=7)
        assert other.stream == 7
        assert opts.stream == 0


class TestAnsatzSpec:
    """Familles de graphons."""

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            AnsatzSpec("bogus")

    def test_pode_counts(self):
        assert AnsatzSpec("free_k", k=3).pode_count == 3
        assert AnsatzSpec("symmetric_bipodal").pode_count == 2
        assert AnsatzSpec("n2_symmetric", n=2).pode_count == 4

    def test_free_k_range(self):
        with pytest.raises(ValueError):
            AnsatzSpec("free_k", k=9)


class TestBlockStructure:
    """Espace réduit x = [logits de blocs, logits de tailles]."""

    def test_free_dimensions(self):
        s = free_structure(3)
        assert s.n_blocks == 6
        assert s.dim == 8

    def test_symmetric_dimensions(self):
        assert symmetric_bipodal_structure().dim == 2
        assert n2_symmetric_structure(1).dim == 5
        assert n2_symmetric_structure(2).dim == 6

    def test_encode_round_trip(self):
        g = MultipodalGraphon([0.2, 0.3, 0.5], [[0.1, 0.7, 0.4], [0.7, 0.9, 0.2], [0.4, 0.2, 0.5]])
        s = free_structure(3)
        h = s.graphon(s.encode(g))
        assert h.distance(g) < 1e-12

    def test_evaluate_matches_densities(self):
        g = MultipodalGraphon([0.2, 0.3, 0.5], [[0.1, 0.7, 0.4], [0.7, 0.9, 0.2], [0.4, 0.2, 0.5]])
        s = free_structure(3)
        ev = s.evaluate(s.encode(g))
        assert ev.edge == pytest.approx(edge_density(g), abs=1e-13)
        assert ev.triangle == pytest.approx(triangle_density(g), abs=1e-13)
        assert ev.entropy == pytest.approx(shannon_entropy(g), abs=1e-13)

    def test_embed_and_soften(self):
        g = embed(MultipodalGraphon.constant(0.0), 3)
        assert g.k == 3
        h = soften(g, 1e-3)
        assert h.blocks.min() == pytest.approx(1e-3)


# =============================================================================
# GRAINES
# =============================================================================

class TestSeeds:
    """Graines structurées et aléatoires."""

    def test_deterministic(self):
        a = seed_list(0.4, 0.05, 3, 6, seed=42, stream=0, softening=1e-3)
        b = seed_list(0.4, 0.05, 3, 6, seed=42, stream=0, softening=1e-3)
        assert [s.label for s in a] == [s.label for s in b]
        assert all(x.graphon == y.graphon for x, y in zip(a, b))

    def test_count_and_order(self):
        seeds = seed_list(0.4, 0.05, 3, 6, seed=42, stream=0, softening=1e-3)
        assert len(seeds) == 6
        assert seeds[0].label == "er"
        assert all(s.graphon.k == 3 for s in seeds)

    def test_streams_differ(self):
        a = seed_list(0.4, 0.05, 3, 6, seed=42, stream=0, softening=1e-3)
        b = seed_list(0.4, 0.05, 3, 6, seed=42, stream=1, softening=1e-3)
        assert a[-1].graphon != b[-1].graphon

    def test_flat_region_seeds(self):
        labels = [s.label for s in structured_seeds(0.3, 1e-4, 2, 1e-3)]
        assert labels[:3] == ["er", "symmetric_bipodal", "bottom_flat"]

    def test_scallop_seed_needs_enough_podes(self):
        assert "scallop" not in [s.label for s in structured_seeds(0.7, 0.25, 3, 1e-3)]
        assert "scallop" in [s.label for s in structured_seeds(0.7, 0.25, 4, 1e-3)]

    def test_structured_seeds_carry_multipliers(self):
        """Graines adoucies: multiplicateurs extraits, sauf pour le graphon constant."""
        t = scallop_params(0.6).t0 + 1e-3
        seeds = {s.label: s for s in structured_seeds(0.6, t, 3, 1e-3)}
        assert seeds["er"].multipliers is None
        assert seeds["scallop"].multipliers is not None
        assert not seeds["scallop"].multipliers.degenerate

    def test_seed_multipliers_saturated(self):
        g = MultipodalGraphon([0.5, 0.5], [[0.0, 1.0], [1.0, 0.0]])
        assert seed_multipliers(g) is None


class TestSymmetricBipodal:
    """Racine exacte de t = ¾AD² + ¼A³."""

    @pytest.mark.parametrize("e", [0.2, 0.3, 0.4])
    @pytest.mark.parametrize("t", [1e-3, 1e-4])
    def test_root_matches_bisection(self, e, t):
        assert symmetric_bipodal_root(e, t) == pytest.approx(bisection_root(e, t), abs=1e-12)

    def test_root_densities(self):
        A = symmetric_bipodal_root(0.3, 1e-4)
        g = symmetric_bipodal_graphon(0.3, A)
        assert edge_density(g) == pytest.approx(0.3, abs=1e-15)
        assert triangle_density(g) == pytest.approx(1e-4, abs=1e-16)

    def test_asymptotic_block(self):
        A = symmetric_bipodal_root(0.3, 1e-4)
        assert A == pytest.approx(asymptotic_flat_block(0.3, 1e-4), rel=0.02)

    def test_above_er_curve_infeasible(self):
        with pytest.raises(AnsatzInfeasibleError, match="ansatz infeasible"):
            symmetric_bipodal_root(0.3, 0.03)


# =============================================================================
# LAGRANGIEN AUGMENTÉ ET POLISH
# =============================================================================

class TestAugmentedLagrangian:
    """Sous-solveur contraint."""

    def test_reaches_constraints(self):
        s = free_structure(2)
        g0 = MultipodalGraphon([0.5, 0.5], [[0.3, 0.5], [0.5, 0.3]])
        out = augmented_lagrangian(s, s.encode(g0), 0.4, 0.05, tol=1e-8)
        assert out.converged
        assert max(out.constraint_error) < 1e-8
        B = s.graphon(out.x).blocks
        assert abs(B[0, 0] - B[0, 1]) > 1e-3

    def test_warm_start_at_kkt_point(self):
        """Multiplicateurs exacts: le premier sous-problème suffit."""
        A = symmetric_bipodal_root(0.3, 1e-3)
        g = symmetric_bipodal_graphon(0.3, A)
        s = free_structure(2)
        mult = seed_multipliers(g)
        out = augmented_lagrangian(s, s.encode(g), 0.3, 1e-3, lam0=[mult.alpha, mult.beta / 3.0], tol=1e-8)
        assert out.converged
        assert out.outer_iterations == 1
        assert out.entropy == pytest.approx(shannon_entropy(g), abs=1e-8)

    def test_polish_at_exact_point(self):
        """Le bipodal symétrique exact est déjà un point KKT."""
        A = symmetric_bipodal_root(0.3, 1e-3)
        g = symmetric_bipodal_graphon(0.3, A)
        s = free_structure(2)
        from src.variational import extract_multipliers
        mult = extract_multipliers(g)
        pol = kkt_polish(s, s.encode(g), mult.alpha, mult.beta, 0.3, 1e-3)
        assert pol.success
        assert pol.beta == pytest.approx(mult.beta, rel=1e-6)


# =============================================================================
# MULTI-START
# =============================================================================

class TestMaximizeEntropy:
    """Solveur complet."""

    def test_er_point(self):
        result = maximize_entropy(0.5, 0.125, 1, SolverOptions(n_starts=2))
        assert result.k == 1
        assert result.graphon.blocks[0, 0] == pytest.approx(0.5, abs=1e-8)
        assert result.entropy == pytest.approx(math.log(2.0), abs=1e-9)
        assert result.multipliers.degenerate
        assert result.ansatz == "free_1"

    def test_auto_prefers_smallest_k_at_er(self, fast_opts):
        result = maximize_entropy_auto(0.5, 0.125, fast_opts)
        assert result.k == 1
        assert result.entropy == pytest.approx(math.log(2.0), abs=1e-9)
        assert result.el_residual < 1e-6

    def test_infeasible_point(self, fast_opts):
        with pytest.raises(InfeasiblePointError, match="below minimal triangle density"):
            maximize_entropy(0.6, 0.05, 2, fast_opts)

    def test_k_out_of_range(self, fast_opts):
        with pytest.raises(ValueError):
            maximize_entropy(0.5, 0.125, 9, fast_opts)

    def test_flat_region_is_symmetric_bipodal(self):
        """À (0.3, 1e-4): bipodal symétrique, entropie de l'ansatz exact."""
        opts = SolverOptions(n_starts=6, k_max=3)
        result = maximize_entropy_auto(0.3, 1e-4, opts)
        exact = ansatz_solve(0.3, 1e-4, AnsatzSpec("symmetric_bipodal"))
        assert result.k == 2
        assert abs(result.graphon.podes[0] - 0.5) < 1e-4
        B = result.graphon.blocks
        assert abs(B[0, 0] - B[1, 1]) < 1e-6
        assert result.entropy == pytest.approx(exact.entropy, abs=1e-8)
        assert max(result.constraint_error) < 1e-8
        assert result.el_residual < 1e-6
        assert result.worth_spread < 1e-6

    def test_deterministic(self, fast_opts):
        a = maximize_entropy(0.4, 0.05, 2, fast_opts)
        b = maximize_entropy(0.4, 0.05, 2, fast_opts)
        assert a.graphon == b.graphon
        assert a.entropy == b.entropy


class TestAnsatzSolve:
    """Familles réduites."""

    def test_symmetric_bipodal(self):
        result = ansatz_solve(0.3, 1e-4, AnsatzSpec("symmetric_bipodal"))
        A = bisection_root(0.3, 1e-4)
        assert result.ansatz == "symmetric_bipodal"
        assert result.graphon.blocks[0, 0] == pytest.approx(A, abs=1e-12)
        assert result.el_residual < 1e-8

    def test_n2_symmetric_above_scallop(self):
        spec = scallop_params(0.6)
        t = spec.t0 + 1e-3
        result = ansatz_solve(0.6, t, AnsatzSpec("n2_symmetric", n=1), SolverOptions(n_starts=3))
        assert result.ansatz == "n2_symmetric"
        assert max(result.constraint_error) < 1e-8
        assert result.k == 3

    def test_infeasible_ansatz(self):
        with pytest.raises(AnsatzInfeasibleError):
            ansatz_solve(0.3, 0.03, AnsatzSpec("symmetric_bipodal"))


class TestDirectPolish:
    """Graines avec multiplicateurs: polish KKT avant le Lagrangien augmenté."""

    def test_exact_seed_polished_directly(self):
        result = maximize_entropy(0.3, 1e-4, 2, SolverOptions(n_starts=3))
        direct = [s for s in result.starts if s["label"].endswith("symmetric_bipodal+kkt")]
        assert len(direct) == 1
        assert direct[0]["converged"]
        assert direct[0]["outer_iterations"] == 0

    def test_without_polish_runs_auglag(self):
        result = maximize_entropy(0.3, 1e-4, 2, SolverOptions(n_starts=3, polish=False))
        assert not any(s["label"].endswith("+kkt") for s in result.starts)
        assert max(result.constraint_error) < 1e-8


class TestParallelStarts:
    """Départs répartis sur plusieurs processus."""

    def test_workers_match_serial(self, fast_opts):
        serial = maximize_entropy(0.4, 0.05, 2, fast_opts)
        parallel = maximize_entropy(0.4, 0.05, 2, fast_opts.with_(workers=2))
        assert parallel.graphon == serial.graphon
        assert parallel.entropy == serial.entropy
        assert [s["label"] for s in parallel.starts] == [s["label"] for s in serial.starts]

    def test_n2_workers_match_serial(self):
        opts = SolverOptions(n_starts=3)
        t = scallop_params(0.6).t0 + 1e-3
        serial = ansatz_solve(0.6, t, AnsatzSpec("n2_symmetric", n=1), opts)
        parallel = ansatz_solve(0.6, t, AnsatzSpec("n2_symmetric", n=1), opts.with_(workers=3))
        assert parallel.graphon == serial.graphon


# =============================================================================
# STRUCTURES OPTIMALES CONNUES
# =============================================================================

class TestScallopStructure:
    """Optimum au-dessus des scallops, k choisi automatiquement."""

    @pytest.fixture(scope="class")
    def opts(self):
        return SolverOptions(n_starts=12, k_max=4)

    def test_first_scallop(self, opts):
        """e = 0.6, t = t₀ + 1e-4: tripodal, symétrie (1, 2), rang 3."""
        result = maximize_entropy_auto(0.6, scallop_params(0.6).t0 + 1e-4, opts)
        g = result.graphon
        assert g.k == 3, f"k = {g.k}"
        assert detect_symmetry(g) == (1, 2)
        assert rank(g) == 3
        assert np.max(np.diag(g.blocks)) < 1e-3
        assert np.sum(np.triu(g.blocks, 1) > 0.999) == 2

    def test_second_scallop(self, opts):
        """e = 0.7, t = t₀ + 1e-4: quadripodal, symétrie (2, 2), rang 4."""
        result = maximize_entropy_auto(0.7, scallop_params(0.7).t0 + 1e-4, opts)
        assert result.k == 4, f"k = {result.k}"
        assert detect_symmetry(result.graphon) == (2, 2)
        assert rank(result.graphon) == 4


class TestTopStructure:
    """Sous t = e^{3/2} à e = 0.49: pode plein de largeur √e = 0.7."""

    @pytest.fixture(scope="class")
    def result(self):
        e = 0.49
        return maximize_entropy(e, e ** 1.5 - 1e-3, 2, SolverOptions(n_starts=6))

    def test_widths(self, result):
        widths = sorted(result.graphon.podes, reverse=True)
        assert widths[0] == pytest.approx(0.7, abs=0.02)
        assert widths[1] == pytest.approx(0.3, abs=0.02)

    def test_blocks(self, result):
        g = result.graphon
        big = int(np.argmax(g.podes))
        small = 1 - big
        assert g.blocks[big, big] > 0.99
        assert g.blocks[big, small] < 1e-2
        assert g.blocks[small, small] < 1e-2

    def test_multipliers(self, result):
        mult = result.multipliers
        assert mult.beta < 0.0 < mult.alpha
        ratio = mult.beta / mult.alpha
        assert abs(ratio / top_beta_over_alpha_limit(0.49) - 1.0) < 0.15, f"β/α = {ratio}"


class TestDistinctOptima:
    """Comptage des optima concurrents."""

    def test_permutations_count_once(self):
        g = MultipodalGraphon([0.3, 0.7], [[0.1, 0.6], [0.6, 0.4]])
        assert count_distinct_optima([g, g.permute([1, 0])], 1e-7, 1e-4) == 1

    def test_different_graphons(self):
        g = MultipodalGraphon([0.3, 0.7], [[0.1, 0.6], [0.6, 0.4]])
        h = MultipodalGraphon([0.3, 0.7], [[0.1, 0.6], [0.6, 0.5]])
        assert count_distinct_optima([g, h], 1e-7, 1e-4) == 2


if __name__ == "__main__":
    pytest.main([__file__, "-v"])

"""Tests des paramètres d'ordre, du rang et de la classification des phases

Lancer avec: pytest tests/test_phase.py -v
"""

import math

import numpy as np
import pytest
from pathlib import Path
import sys

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.graphon import MultipodalGraphon
from src.boundary import cusp_graphon, reference_graphon, scallop_family_graphon, scallop_params
from src.optimizer import AnsatzSpec, ansatz_solve, symmetric_bipodal_graphon, symmetric_bipodal_root
from src.phase import (
    PhaseLabel,
    newton_determinant,
    order_parameter,
    order_parameters,
    spectral_order_parameter,
    rank,
    detect_symmetry,
    classify_graphon,
    classify,
)


# =============================================================================
# FIXTURES
# =============================================================================

@pytest.fixture
def bipartite():
    """c = (½, ½), B = [[0, .8], [.8, 0]]: valeurs propres ±0.4."""
    return MultipodalGraphon([0.5, 0.5], [[0.0, 0.8], [0.8, 0.0]])


@pytest.fixture
def bipodal_flat():
    A = symmetric_bipodal_root(0.3, 1e-3)
    return symmetric_bipodal_graphon(0.3, A)


@pytest.fixture
def scallop_06():
    spec = scallop_params(0.6)
    return scallop_family_graphon(1, 0.6, spec.c0)


@pytest.fixture
def scallop_07():
    spec = scallop_params(0.7)
    return scallop_family_graphon(2, 0.7, spec.c0)


@pytest.fixture
def tripodal():
    return MultipodalGraphon(
        [0.2, 0.3, 0.5],
        [[0.1, 0.7, 0.4], [0.7, 0.9, 0.2], [0.4, 0.2, 0.5]],
    )


# =============================================================================
# IDENTITÉS DE NEWTON
# =============================================================================

class TestNewtonIdentities:
    """e_k à partir des sommes de puissances."""

    def test_two_roots(self):
        """Racines {1, 2}: t₁ = 3, t₂ = 5, e₂ = 2."""
        assert newton_determinant([3.0, 5.0], 2) == pytest.approx(2.0, abs=1e-15)

    def test_three_roots(self):
        """Racines {1, 2, 3}: e₂ = 11, e₃ = 6."""
        sums = [6.0, 14.0, 36.0]
        assert newton_determinant(sums, 2) == pytest.approx(11.0, abs=1e-13)
        assert newton_determinant(sums, 3) == pytest.approx(6.0, abs=1e-13)

    def test_not_enough_sums(self):
        with pytest.raises(ValueError):
            newton_determinant([1.0], 2)

    def test_order_out_of_range(self, tripodal):
        with pytest.raises(ValueError):
            order_parameter(tripodal, 1)
        with pytest.raises(ValueError):
            order_parameter(tripodal, 7)


class TestOrderParameters:
    """p_k(g³)."""

    @pytest.mark.parametrize("p", [0.2, 0.5, 0.9])
    def test_constant_has_zero_p2(self, p):
        assert order_parameter(MultipodalGraphon.constant(p), 2) == pytest.approx(0.0, abs=1e-15)

    def test_bipartite_p2(self, bipartite):
        """Produit des cubes: 0.4³ · (-0.4)³."""
        assert order_parameter(bipartite, 2) == pytest.approx(-0.004096, abs=1e-15)

    @pytest.mark.parametrize("k", [2, 3])
    def test_spectral_agrees_with_newton(self, tripodal, k):
        assert order_parameter(tripodal, k) == pytest.approx(spectral_order_parameter(tripodal, k), rel=1e-8, abs=1e-15)

    def test_vanishes_above_rank(self, bipodal_flat):
        assert order_parameter(bipodal_flat, 3) == pytest.approx(0.0, abs=1e-12)
        assert abs(order_parameter(bipodal_flat, 2)) > 1e-6

    @pytest.mark.parametrize("index", range(50))
    def test_vanishes_above_rank_random(self, index):
        """Graphon aléatoire de rang r ∈ {1..4}, raffiné: p_k = 0 pour tout k > r."""
        r = 1 + index % 4
        rng = np.random.default_rng([11, index])
        B = rng.uniform(0.05, 0.95, size=(r, r))
        B = np.triu(B) + np.triu(B, 1).T
        g = MultipodalGraphon.from_widths(rng.uniform(0.2, 1.0, size=r), B)
        g = g.split_pode(0, float(rng.uniform(0.2, 0.8)))
        assert rank(g) == r
        for k in range(max(2, r + 1), 7):
            assert abs(order_parameter(g, k)) < 1e-10, f"rang {r}, p_{k} = {order_parameter(g, k)}"

    def test_default_list(self, tripodal):
        assert len(order_parameters(tripodal)) == 3


class TestRank:
    """Rang numérique."""

    def test_ranks(self, bipartite):
        assert rank(MultipodalGraphon.constant(0.4)) == 1
        assert rank(bipartite) == 2
        assert rank(cusp_graphon(2)) == 3

    def test_split_does_not_change_rank(self, tripodal):
        assert rank(tripodal.split_pode(1)) == rank(tripodal)


# =============================================================================
# SYMÉTRIE
# =============================================================================

class TestDetectSymmetry:
    """(n, m) des classes de podes."""

    def test_constant(self):
        assert detect_symmetry(MultipodalGraphon.constant(0.4)) == (1, 0)

    def test_symmetric_bipodal(self, bipodal_flat):
        assert detect_symmetry(bipodal_flat) == (2, 0)

    def test_scallop_06(self, scallop_06):
        assert detect_symmetry(scallop_06) == (1, 2)

    def test_scallop_07(self, scallop_07):
        assert detect_symmetry(scallop_07) == (2, 2)

    def test_top(self):
        assert detect_symmetry(reference_graphon("top", 0.49)) == (1, 1)

    def test_no_symmetry(self, tripodal):
        assert detect_symmetry(tripodal) is None


# =============================================================================
# CLASSIFICATION
# =============================================================================

class TestClassify:
    """Étiquettes de région."""

    def test_er(self):
        label = classify_graphon(MultipodalGraphon.constant(0.4))
        assert label.region_tag == "ER"
        assert label.rank == 1
        assert not label.provisional

    def test_a20(self, bipodal_flat):
        label = classify_graphon(bipodal_flat, 0.3, 1e-3)
        assert label.region_tag == "A(2,0)"
        assert label.symmetry == (2, 0)
        assert label.order_param(3) == pytest.approx(0.0, abs=1e-12)

    def test_c12(self, scallop_06):
        label = classify_graphon(scallop_06)
        assert label.rank == 3
        assert label.region_tag == "C(1,2)"

    def test_c22(self, scallop_07):
        label = classify_graphon(scallop_07)
        assert label.rank == 4
        assert label.region_tag == "C(2,2)"

    def test_f11_is_provisional(self):
        g = MultipodalGraphon([0.7, 0.3], [[0.95, 0.05], [0.05, 0.02]])
        label = classify_graphon(g)
        assert label.region_tag == "F(1,1)"
        assert label.provisional

    def test_unclassified(self, tripodal):
        assert classify_graphon(tripodal).region_tag == "unclassified"

    def test_classify_result_uses_target(self):
        result = ansatz_solve(0.3, 1e-4, AnsatzSpec("symmetric_bipodal"))
        label = classify(result)
        assert label.region_tag == "A(2,0)"
        assert label.rank == 2


class TestPhaseLabel:
    """Accès et sérialisation."""

    def test_order_param_out_of_range(self):
        label = PhaseLabel(rank=1, symmetry=(1, 0), order_params=[0.0, 0.0, 0.0])
        assert label.order_param(2) == 0.0
        assert math.isnan(label.order_param(9))

    def test_to_dict(self, bipartite):
        data = classify_graphon(bipartite).to_dict()
        assert data["symmetry"] == [2, 0]
        assert data["rank"] == 2
        assert np.isclose(data["order_params"][0], -0.004096)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])

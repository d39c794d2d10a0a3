"""Tests des diagnostics variationnels (multiplicateurs, Euler–Lagrange, worth)

Lancer avec: pytest tests/test_variational.py -v
"""

import math

import numpy as np
import pytest
from scipy.special import entr
from pathlib import Path
import sys

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.errors import SaturatedGraphonError
from src.graphon import MultipodalGraphon, binary_entropy_deriv1
from src.boundary import reference_graphon, scallop_params
from src.graphon.densities import overlap_matrix
from src.optimizer import AnsatzSpec, SolverOptions, ansatz_solve
from src.optimizer.seeds import symmetric_bipodal_graphon, symmetric_bipodal_root
from src.variational import (
    Multipliers,
    extract_multipliers,
    el_residual,
    pointwise_value,
    pointwise_value_gradient,
    worth,
    pode_worths,
    worth_spread,
    worth_hessian,
    maximize_worth,
    worth_gap,
    diagnose,
)


# =============================================================================
# FIXTURES
# =============================================================================

@pytest.fixture
def bipodal_optimum():
    """Optimum bipodal symétrique exact à (0.3, 1e-3)."""
    A = symmetric_bipodal_root(0.3, 1e-3)
    return symmetric_bipodal_graphon(0.3, A)


@pytest.fixture
def flat_reference():
    return reference_graphon("bottom_flat", 0.3)


@pytest.fixture(scope="module")
def scallop_optimum():
    """Ansatz (1, 2) à (0.6, t₀ + 1e-3) et ses multiplicateurs."""
    t = scallop_params(0.6).t0 + 1e-3
    result = ansatz_solve(0.6, t, AnsatzSpec("n2_symmetric", n=1), SolverOptions(n_starts=3))
    return result.graphon, result.multipliers


# =============================================================================
# MULTIPLICATEURS
# =============================================================================

class TestMultipliers:
    """Extraction de (α, β) et résidu EL."""

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            Multipliers(alpha=float("nan"), beta=0.0)

    def test_er_is_degenerate(self):
        mult = extract_multipliers(MultipodalGraphon.constant(0.3))
        assert mult.degenerate
        assert mult.beta == 0.0
        assert mult.alpha == pytest.approx(binary_entropy_deriv1(0.3), rel=1e-12)

    def test_canonical_er(self):
        g = MultipodalGraphon.constant(0.3)
        mult = Multipliers.canonical_er(0.3)
        assert el_residual(g, mult) < 1e-14
        np.testing.assert_allclose(pointwise_value_gradient(g, mult), 0.0, atol=1e-14)

    def test_saturated_graphon(self):
        with pytest.raises(SaturatedGraphonError, match="all blocks saturated"):
            extract_multipliers(MultipodalGraphon([0.5, 0.5], [[0.0, 1.0], [1.0, 0.0]]))

    def test_bipodal_optimum_satisfies_el(self, bipodal_optimum):
        mult = extract_multipliers(bipodal_optimum)
        assert not mult.degenerate
        assert mult.beta > 0.0
        assert el_residual(bipodal_optimum, mult) < 1e-8

    def test_el_residual_detects_wrong_multipliers(self, bipodal_optimum):
        mult = extract_multipliers(bipodal_optimum)
        wrong = Multipliers(alpha=mult.alpha + 0.1, beta=mult.beta)
        assert el_residual(bipodal_optimum, wrong) == pytest.approx(0.1, rel=1e-6)

    def test_pointwise_value_shape(self, bipodal_optimum):
        V = pointwise_value(bipodal_optimum, Multipliers(0.0, 1.0))
        assert V.shape == (2, 2)


# =============================================================================
# WORTH
# =============================================================================

class TestWorth:
    """Worth des colonnes et recherche des maximiseurs."""

    def test_pode_worths_equal_at_optimum(self, bipodal_optimum):
        mult = extract_multipliers(bipodal_optimum)
        assert worth_spread(bipodal_optimum, mult) < 1e-12

    def test_worth_of_row_matches_pode_worth(self, bipodal_optimum):
        mult = extract_multipliers(bipodal_optimum)
        assert worth(bipodal_optimum, mult, bipodal_optimum.row(0)) == pytest.approx(
            pode_worths(bipodal_optimum, mult)[0], abs=1e-15
        )

    def test_profile_length_checked(self, bipodal_optimum):
        with pytest.raises(ValueError):
            worth(bipodal_optimum, Multipliers(0.0, 0.0), [0.5, 0.5, 0.5])

    def test_er_single_maximizer(self):
        """α = β = 0: W(a) = Σ c_i H(a_i), maximum unique en a ≡ ½."""
        g = MultipodalGraphon([0.4, 0.6], [[0.5, 0.5], [0.5, 0.5]])
        search = maximize_worth(g, Multipliers(0.0, 0.0), starts=4)
        assert len(search.maximizers) == 1
        np.testing.assert_allclose(search.maximizers[0].profile.values, 0.5, atol=1e-9)
        assert search.maximizers[0].worth == pytest.approx(math.log(2.0), abs=1e-12)

    def test_hessian_negative_definite_at_half(self):
        g = MultipodalGraphon.constant(0.5)
        H = worth_hessian(g, Multipliers(0.0, 0.0), [0.5])
        assert H[0, 0] == pytest.approx(-4.0, rel=1e-12)

    def test_flat_reference_has_two_maximizers(self, flat_reference):
        """bottom_flat(0.3) avec (α, β) = (H'(0.6), 40): deux colonnes miroirs."""
        mult = Multipliers(alpha=binary_entropy_deriv1(0.6), beta=40.0)
        assert worth_spread(flat_reference, mult) < 1e-12
        search = maximize_worth(flat_reference, mult, starts=16)
        assert len(search.maximizers) == 2
        a, b = (m.profile.values for m in search.maximizers)
        np.testing.assert_allclose(a, b[::-1], atol=1e-6)
        assert search.maximizers[0].worth == pytest.approx(search.maximizers[1].worth, abs=1e-9)
        assert search.saddles >= 1

    def test_worth_gap_nonpositive_at_er(self):
        g = MultipodalGraphon.constant(0.5)
        assert worth_gap(g, Multipliers(0.0, 0.0)) <= 1e-12


class TestPointwiseValue:
    """V_ij = H(B_ij) - α B_ij - β G_ij B_ij et sa dérivée à G fixé."""

    def test_constant_half(self):
        V = pointwise_value(MultipodalGraphon.constant(0.5), Multipliers(0.0, 0.0))
        np.testing.assert_allclose(V, math.log(2.0), atol=1e-15)

    def test_empty_block(self, flat_reference):
        V = pointwise_value(flat_reference, Multipliers(0.3, 2.0))
        assert V[0, 0] == 0.0 and V[1, 1] == 0.0

    def test_gradient_matches_finite_differences(self, bipodal_optimum):
        """Différences centrées de V_ij en B_ij, G gelé."""
        mult = Multipliers(alpha=0.4, beta=3.0)
        B = bipodal_optimum.blocks
        G = overlap_matrix(bipodal_optimum)
        h = 1e-7
        fd = (
            (entr(B + h) + entr(1.0 - B - h) - mult.alpha * (B + h) - mult.beta * G * (B + h))
            - (entr(B - h) + entr(1.0 - B + h) - mult.alpha * (B - h) - mult.beta * G * (B - h))
        ) / (2.0 * h)
        np.testing.assert_allclose(pointwise_value_gradient(bipodal_optimum, mult), fd, atol=1e-6)

    def test_stationary_with_extracted_multipliers(self):
        """c = (½, ½), B = [[0.01, 0.59], [0.59, 0.01]]: système exactement déterminé."""
        g = MultipodalGraphon([0.5, 0.5], [[0.01, 0.59], [0.59, 0.01]])
        mult = extract_multipliers(g)
        np.testing.assert_allclose(pointwise_value_gradient(g, mult), 0.0, atol=1e-9)


class TestWorthOracle:
    """Worth contre une intégrale discrétisée et les valeurs de référence."""

    def test_pode_worths_match_discretized_integral(self):
        """200 points milieux: exact pour des largeurs multiples de 1/200."""
        c = np.array([0.25, 0.35, 0.4])
        B = np.array([[0.1, 0.7, 0.4], [0.7, 0.9, 0.2], [0.4, 0.2, 0.5]])
        g = MultipodalGraphon(c, B)
        mult = Multipliers(alpha=-0.3, beta=1.7)

        n = 200
        x = (np.arange(n) + 0.5) / n
        labels = np.searchsorted(np.cumsum(c), x)
        M = B[np.ix_(labels, labels)]
        expected = []
        for i in range(3):
            a = M[np.argmax(labels == i)]
            H = entr(a) + entr(1.0 - a)
            expected.append(np.mean(H - mult.alpha * a) - 0.5 * mult.beta * (a @ M @ a) / n ** 2)

        np.testing.assert_allclose(pode_worths(g, mult), expected, atol=1e-8)

    def test_bottom_phase_worth(self, flat_reference):
        """bottom_flat(0.3), α = H'(0.6), β = 40, a = (0, 0.6): W = -½ ln(0.4)."""
        mult = Multipliers(alpha=binary_entropy_deriv1(0.6), beta=40.0)
        assert worth(flat_reference, mult, [0.0, 0.6]) == pytest.approx(-0.5 * math.log(0.4), abs=1e-9)
        assert -0.5 * math.log(0.4) == pytest.approx(0.4581454, abs=1e-7)

    def test_perturbed_block_breaks_equal_worth(self, bipodal_optimum):
        """Un bloc décalé de 0.05: écart des worths > 1e-3."""
        mult = extract_multipliers(bipodal_optimum)
        B = bipodal_optimum.blocks.copy()
        B[0, 0] += 0.05
        perturbed = MultipodalGraphon(bipodal_optimum.podes, B)
        assert worth_spread(bipodal_optimum, mult) < 1e-12
        assert worth_spread(perturbed, mult) > 1e-3

    def test_scallop_columns_are_the_maximizers(self, scallop_optimum):
        """Optimum (1, 2) au-dessus du premier scallop: trois maximiseurs, un par colonne de pode."""
        g, mult = scallop_optimum
        search = maximize_worth(g, mult, starts=16)
        assert len(search.maximizers) == 3
        for i in range(g.k):
            distances = [np.max(np.abs(m.profile.values - g.blocks[i])) for m in search.maximizers]
            assert min(distances) < 1e-4
        assert worth_gap(g, mult, search) <= 1e-6


class TestDiagnose:
    """Suite complète de diagnostics."""

    def test_er_is_optimal(self):
        g = MultipodalGraphon.constant(0.4)
        report = diagnose(g, Multipliers.canonical_er(0.4), starts=4)
        assert report.is_optimal()
        assert report.n_maximizers == 1

    def test_bipodal_optimum(self, bipodal_optimum):
        report = diagnose(bipodal_optimum, extract_multipliers(bipodal_optimum), starts=8)
        assert report.el_residual < 1e-6
        assert report.worth_spread < 1e-6
        assert report.worth_gap <= 1e-6
        assert len(report.pode_worths) == 2


if __name__ == "__main__":
    pytest.main([__file__, "-v"])

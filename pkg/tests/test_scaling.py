"""Tests des études d'échelle près des bords

Les lois asymptotiques sont vérifiées comme tendances entre décades.

Lancer avec: pytest tests/test_scaling.py -v
"""

import numpy as np
import pytest
from pathlib import Path
import sys

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.errors import FlatRegionError
from src.optimizer import SolverOptions
from src.scaling import (
    CSV_COLUMNS,
    decade_ratios,
    flat_boundary_study,
    scallop_study,
    top_boundary_study,
    top_beta_over_alpha_limit,
)


# =============================================================================
# FIXTURES
# =============================================================================

@pytest.fixture(scope="module")
def flat_report():
    """Étude plate à e = 0.3, t ∈ {1e-3, 1e-4, 1e-5}."""
    return flat_boundary_study(0.3)


# =============================================================================
# BORD PLAT
# =============================================================================

class TestFlatBoundary:
    """Bipodal symétrique exact quand t → 0."""

    def test_samples_ordered_by_decreasing_t(self, flat_report):
        np.testing.assert_allclose(flat_report.column("delta"), [1e-3, 1e-4, 1e-5])

    def test_block_follows_asymptotic(self, flat_report):
        np.testing.assert_allclose(flat_report.column("A_ratio"), 1.0, atol=0.02)

    def test_beta_ratio_tends_to_one(self, flat_report):
        """β·2e²/ln(1/t) croît vers 1, à 30% près dès t = 1e-3."""
        ratios = flat_report.column("beta_ratio")
        assert np.all(np.diff(ratios) > 0)
        assert np.all(np.abs(ratios - 1.0) < 0.3)

    def test_entropy_gain_scaling(self, flat_report):
        """ΔB / (t ln(1/t)) quasi constant d'une décade à l'autre."""
        dB = flat_report.column("delta_B")
        assert np.all(dB > 0)
        for r in decade_ratios(flat_report.column("dB_ratio")):
            assert abs(r - 1.0) < 0.25

    def test_fitted_exponent_near_one(self, flat_report):
        assert 0.7 < flat_report.fitted_exponent < 1.0
        assert flat_report.fitted_r2 > 0.99

    def test_multipliers_certified(self, flat_report):
        assert np.all(flat_report.column("el_residual") < 1e-8)
        assert np.all(flat_report.column("beta") > 0)

    def test_frame(self, flat_report):
        df = flat_report.to_frame()
        assert list(df.columns) == CSV_COLUMNS
        assert len(df) == 3
        wide = flat_report.to_frame(include_aux=True)
        assert "beta_ratio" in wide.columns

    def test_to_dict(self, flat_report):
        data = flat_report.to_dict()
        assert data["boundary"] == "flat"
        assert len(data["samples"]) == 3

    def test_invalid_edge_density(self):
        with pytest.raises(ValueError):
            flat_boundary_study(0.6)

    def test_t_above_er_curve(self):
        with pytest.raises(ValueError):
            flat_boundary_study(0.3, [0.05])


# =============================================================================
# SCALLOP ET BORD SUPÉRIEUR
# =============================================================================

class TestScallopStudy:
    """Ansatz (n, 2) au-dessus du scallop."""

    def test_single_decade(self):
        report = scallop_study(0.6, [1e-3], SolverOptions(n_starts=3))
        assert len(report.samples) == 1
        assert report.column("delta_B")[0] > 0
        assert report.column("k")[0] == 3

    def test_flat_region_rejected(self):
        with pytest.raises(FlatRegionError):
            scallop_study(0.4)

    def test_delta_range(self):
        with pytest.raises(ValueError):
            scallop_study(0.6, [0.5])


class TestTopStudy:
    """Bipodal libre sous t = e^{3/2}."""

    @pytest.fixture(scope="class")
    def top_report(self):
        """e = 0.49 (√e = 0.7), Δ = 1e-3."""
        return top_boundary_study(0.49, [1e-3], SolverOptions(n_starts=6))

    def test_beta_over_alpha_limit(self, top_report):
        """β/α proche de -2/√e = -2.857, à 15% près."""
        ratio = top_report.column("beta_over_alpha")[0]
        assert top_beta_over_alpha_limit(0.49) == pytest.approx(-2.0 / 0.7)
        assert abs(ratio / top_beta_over_alpha_limit(0.49) - 1.0) < 0.15, f"β/α = {ratio}"

    def test_large_pode_near_sqrt_e(self, top_report):
        assert abs(top_report.column("large_width")[0] - 0.7) < 0.02
        assert top_report.column("k")[0] == 2

    def test_invalid_edge_density(self):
        with pytest.raises(ValueError):
            top_boundary_study(1.2)

    def test_delta_below_er_gap(self):
        with pytest.raises(ValueError):
            top_boundary_study(0.5, [0.3])


class TestParallelStudy:
    """Les Δ répartis sur plusieurs processus donnent le même rapport."""

    def test_flat_workers_match_serial(self, flat_report):
        parallel = flat_boundary_study(0.3, workers=2)
        np.testing.assert_array_equal(parallel.column("delta"), flat_report.column("delta"))
        np.testing.assert_array_equal(parallel.column("delta_B"), flat_report.column("delta_B"))
        assert parallel.fitted_exponent == flat_report.fitted_exponent


class TestDecadeRatios:
    """Rapports successifs."""

    def test_ratios(self):
        assert decade_ratios([1.0, 2.0, 4.0]) == [2.0, 2.0]

    def test_single_value(self):
        assert decade_ratios([3.0]) == []


if __name__ == "__main__":
    pytest.main([__file__, "-v"])

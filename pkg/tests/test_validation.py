"""Tests de validation des fichiers graphon JSON

Lancer avec: pytest tests/test_validation.py -v
"""

import json

import numpy as np
import pytest
from pathlib import Path
import sys

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.errors import GraphonFormatError
from src.validation import GraphonValidator, load_graphon, parse_graphon


# =============================================================================
# FIXTURES
# =============================================================================

@pytest.fixture
def validator():
    return GraphonValidator()


@pytest.fixture
def bipodal_data():
    return {"podes": [0.5, 0.5], "blocks": [[0.1, 0.5], [0.5, 0.1]]}


# =============================================================================
# VALIDATEUR
# =============================================================================

class TestGraphonValidator:
    """Champs, formes et tolérances."""

    def test_valid(self, validator, bipodal_data):
        result = validator.validate(bipodal_data)
        assert result.is_valid
        assert result.errors == []
        assert result.cleaned_data["graphon"].k == 2
        assert result.cleaned_data["alpha"] is None

    def test_not_an_object(self, validator):
        result = validator.validate([1, 2])
        assert not result.is_valid

    def test_missing_field(self, validator):
        result = validator.validate({"podes": [1.0]})
        assert not result.is_valid
        assert "champ manquant: blocks" in result.errors

    def test_unknown_field_warns(self, validator, bipodal_data):
        result = validator.validate({**bipodal_data, "comment": "x"})
        assert result.is_valid
        assert any("comment" in w for w in result.warnings)

    @pytest.mark.parametrize("bad", [True, "0.5", float("nan"), None])
    def test_non_numeric_block(self, validator, bad):
        result = validator.validate({"podes": [1.0], "blocks": [[bad]]})
        assert not result.is_valid

    def test_shape_mismatch(self, validator):
        result = validator.validate({"podes": [0.5, 0.5], "blocks": [[0.1, 0.2]]})
        assert not result.is_valid

    def test_small_sum_gap_renormalized(self, validator):
        result = validator.validate({"podes": [0.5, 0.5 + 5e-10], "blocks": [[0.1, 0.5], [0.5, 0.1]]})
        assert result.is_valid
        assert any("renormalisé" in w for w in result.warnings)
        assert result.cleaned_data["graphon"].podes.sum() == pytest.approx(1.0, abs=1e-15)

    def test_large_sum_gap_rejected(self, validator):
        result = validator.validate({"podes": [0.5, 0.6], "blocks": [[0.1, 0.5], [0.5, 0.1]]})
        assert not result.is_valid

    def test_non_positive_width(self, validator):
        result = validator.validate({"podes": [1.0, 0.0], "blocks": [[0.1, 0.5], [0.5, 0.1]]})
        assert not result.is_valid

    def test_block_out_of_range(self, validator):
        result = validator.validate({"podes": [1.0], "blocks": [[1.5]]})
        assert not result.is_valid
        assert "hors de [0, 1]" in result.errors[0]

    def test_tiny_asymmetry_symmetrized(self, validator):
        result = validator.validate({"podes": [0.5, 0.5], "blocks": [[0.1, 0.5], [0.5 + 1e-13, 0.1]]})
        assert result.is_valid
        B = result.cleaned_data["graphon"].blocks
        assert B[0, 1] == B[1, 0]

    def test_asymmetry_rejected(self, validator):
        result = validator.validate({"podes": [0.5, 0.5], "blocks": [[0.1, 0.5], [0.4, 0.1]]})
        assert not result.is_valid

    def test_alpha_without_beta(self, validator, bipodal_data):
        result = validator.validate({**bipodal_data, "alpha": 0.3})
        assert not result.is_valid
        assert "alpha fourni sans beta" in result.errors


# =============================================================================
# LECTURE
# =============================================================================

class TestParseGraphon:
    """Décodage JSON et erreurs de format."""

    def test_multipliers_read(self, bipodal_data):
        loaded = parse_graphon(json.dumps({**bipodal_data, "alpha": 0.3, "beta": 2.0}))
        assert loaded.multipliers.alpha == 0.3
        assert loaded.multipliers.beta == 2.0

    def test_invalid_json(self):
        with pytest.raises(GraphonFormatError) as exc_info:
            parse_graphon('{"podes": [1.0,', source="g.json")
        assert "g.json" in str(exc_info.value)
        assert "ligne 1" in str(exc_info.value)

    def test_invalid_graphon_lists_errors(self):
        with pytest.raises(GraphonFormatError) as exc_info:
            parse_graphon('{"podes": [1.0]}')
        assert exc_info.value.diagnostics == ["champ manquant: blocks"]

    def test_load_from_file(self, tmp_path, bipodal_data):
        path = tmp_path / "g.json"
        path.write_text(json.dumps(bipodal_data), encoding="utf-8")
        loaded = load_graphon(path)
        np.testing.assert_array_equal(loaded.graphon.blocks, bipodal_data["blocks"])
        assert loaded.multipliers is None

    def test_missing_file(self, tmp_path):
        with pytest.raises(GraphonFormatError, match="lecture impossible"):
            load_graphon(tmp_path / "absent.json")


if __name__ == "__main__":
    pytest.main([__file__, "-v"])

"""Tests de l'interface en ligne de commande (sorties et codes de sortie)

Lancer avec: pytest tests/test_cli.py -v
"""

import json
import math

import pytest
from pathlib import Path
import sys

sys.path.insert(0, str(Path(__file__).parent.parent))

from main import main, parse_args
from config import EXIT_CODES
from src.graphon import binary_entropy_deriv1


FAST = ["--starts", "2", "--k-max", "1"]


# =============================================================================
# FIXTURES
# =============================================================================

@pytest.fixture
def flat_file(tmp_path):
    """Graphon bottom_flat(0.3)."""
    path = tmp_path / "flat.json"
    path.write_text(json.dumps({"podes": [0.5, 0.5], "blocks": [[0.0, 0.6], [0.6, 0.0]]}), encoding="utf-8")
    return path


# =============================================================================
# ARGUMENTS
# =============================================================================

class TestParseArgs:
    """Erreurs d'usage → SystemExit(64)."""

    @pytest.mark.parametrize("argv", [
        [],
        ["optimize", "--e", "abc", "--t", "0.1"],
        ["optimize", "--t", "0.1"],
        ["classify"],
        ["ergm", "--grid-e", "0.2"],
        ["worthcheck", "g.json", "--alpha", "0.1"],
        ["scaling", "--kind", "middle", "--e", "0.3"],
    ])
    def test_usage_errors(self, argv):
        with pytest.raises(SystemExit) as exc_info:
            main(argv)
        assert exc_info.value.code == EXIT_CODES["usage"]

    def test_defaults(self):
        args = parse_args(["optimize", "--e", "0.3", "--t", "0.001"])
        assert args.k is None
        assert args.k_max == 6
        assert args.out is None
        assert args.jobs == 1

    def test_negative_multiplier_accepted(self):
        args = parse_args(["worthcheck", "g.json", "--alpha", "-0.4", "--beta", "40"])
        assert args.alpha == -0.4


# =============================================================================
# COMMANDES
# =============================================================================

class TestCommands:
    """Sorties et codes."""

    def test_optimize_jobs(self, capsys):
        code = main(["optimize", "--e", "0.3", "--t", "1e-4", "--k", "2", "--starts", "3", "--jobs", "2"])
        assert code == EXIT_CODES["ok"]
        assert json.loads(capsys.readouterr().out)["k"] == 2

    def test_optimize_infeasible(self, capsys):
        code = main(["optimize", "--e", "0.6", "--t", "0.05"] + FAST)
        assert code == EXIT_CODES["infeasible"]
        assert capsys.readouterr().err.strip().startswith("below minimal triangle density 0.1415")

    def test_optimize_er_point(self, capsys):
        code = main(["optimize", "--e", "0.5", "--t", "0.125", "--k", "1", "--starts", "2"])
        assert code == EXIT_CODES["ok"]
        data = json.loads(capsys.readouterr().out)
        assert data["k"] == 1
        assert data["entropy"] == pytest.approx(math.log(2.0), abs=1e-9)
        assert data["phase"]["region_tag"] == "ER"

    def test_boundary_table(self, capsys):
        code = main(["boundary", "--e-min", "0.5", "--e-max", "0.75", "--steps", "6"])
        assert code == EXIT_CODES["ok"]
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "e,t_min,t_er,t_max,n,c0,p"
        assert len(lines) == 7

    def test_boundary_invalid_range(self):
        assert main(["boundary", "--e-min", "0.8", "--e-max", "0.2"]) == EXIT_CODES["usage"]

    def test_unwritable_output(self, tmp_path):
        out = tmp_path / "absent" / "table.csv"
        assert main(["boundary", "--out", str(out)]) == EXIT_CODES["cant_create"]

    def test_output_file(self, tmp_path):
        out = tmp_path / "table.csv"
        assert main(["boundary", "--steps", "3", "--out", str(out)]) == EXIT_CODES["ok"]
        assert len(out.read_text(encoding="utf-8").splitlines()) == 4

    def test_classify_file(self, flat_file, capsys):
        assert main(["classify", str(flat_file)]) == EXIT_CODES["ok"]
        data = json.loads(capsys.readouterr().out)
        assert data["e"] == pytest.approx(0.3)
        assert data["phase"]["rank"] == 2

    def test_invalid_graphon_file(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text('{"podes": [0.5, 0.6], "blocks": [[0.1, 0.2], [0.2, 0.1]]}', encoding="utf-8")
        assert main(["classify", str(path)]) == EXIT_CODES["data"]
        assert "graphon invalide" in capsys.readouterr().err

    def test_saturated_graphon(self, tmp_path):
        path = tmp_path / "cusp.json"
        path.write_text('{"podes": [0.5, 0.5], "blocks": [[0.0, 1.0], [1.0, 0.0]]}', encoding="utf-8")
        assert main(["worthcheck", str(path)]) == EXIT_CODES["data"]

    def test_worthcheck_flat_reference(self, flat_file, capsys):
        alpha = repr(float(binary_entropy_deriv1(0.6)))
        code = main(["worthcheck", str(flat_file), "--alpha", alpha, "--beta", "40"])
        assert code == EXIT_CODES["ok"]
        data = json.loads(capsys.readouterr().out)
        assert len(data["maximizers"]) == 2
        assert data["diagnostics"]["worth_spread"] < 1e-12

    def test_ergm_er_point(self, capsys):
        code = main(["ergm", "--e", "0.5", "--t", "0.125"] + FAST)
        assert code == EXIT_CODES["ok"]
        data = json.loads(capsys.readouterr().out)
        assert data["visible"] is True
        assert data["beta"] == 0.0

    def test_ergm_grid(self, capsys):
        code = main(["ergm", "--grid-e", "0.5", "--grid-t", "0.125", "0.9"] + FAST)
        assert code == EXIT_CODES["ok"]
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "e,t,alpha,beta,visible,margin"
        assert len(lines) == 2

    def test_sweep_empty_grid(self, capsys):
        argv = ["sweep", "--e-min", "0.6", "--e-max", "0.6", "--t-min", "0.0", "--t-max", "0.05", "--t-steps", "2"]
        assert main(argv + FAST) == EXIT_CODES["ok"]
        assert capsys.readouterr().out.strip().count("\n") == 0

    def test_sweep_invalid_spec(self):
        argv = ["sweep", "--e-min", "0.6", "--e-max", "0.4", "--t-min", "0.0", "--t-max", "0.05"]
        assert main(argv + FAST) == EXIT_CODES["usage"]

    def test_scaling_flat(self, capsys):
        code = main(["scaling", "--kind", "flat", "--e", "0.3", "--deltas", "1e-3", "1e-4", "--aux"])
        assert code == EXIT_CODES["ok"]
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0].startswith("delta,beta,alpha,delta_B")
        assert "beta_ratio" in lines[0]
        assert len(lines) == 3


if __name__ == "__main__":
    pytest.main([__file__, "-v"])

import json

import pytest
from click.testing import CliRunner

from hecke_lab.cli import main

KERNEL_CONFIG = {
    "group": {"p": 3, "weight": 2},
    "coefficients": {"kind": "list", "a": [[1.0, 0.0], [0.5, 0.0], [-0.25, 0.0]], "beta": 1.0},
    "rpf": {"poles": [{"alpha": 1.0, "c": [[1.0, 0.0]]}]},
    "check": {
        "type": "kernels",
        "cases": [
            {"selector": "L2", "params": {"m": 1, "rho": 1, "y": 20.0}},
            {"selector": "Q1", "params": {"r": 1, "alpha": 1.0, "rho": 1, "y": 2.0, "delta": 2.7}},
        ],
    },
}


@pytest.fixture
def config_file(tmp_path):
    def write(data: dict) -> str:
        path = tmp_path / "run.json"
        path.write_text(json.dumps(data), encoding="utf-8")
        return str(path)

    return write


def test_within_tolerance_exits_zero(tmp_path, config_file):
    out = tmp_path / "reports"
    result = CliRunner().invoke(main, ["kernels", "--config", config_file(KERNEL_CONFIG), "--out", str(out)])
    assert result.exit_code == 0, result.output
    assert "✅ kernels" in result.output
    assert (out / "kernels.csv").read_text(encoding="utf-8").startswith("selector,closed_re")
    assert json.loads((out / "kernels.json").read_text(encoding="utf-8"))["passed"] is True
    assert (out / "kernels.yaml").exists()


def test_breach_exits_two(tmp_path, config_file):
    args = ["kernels", "--config", config_file(KERNEL_CONFIG), "--out", str(tmp_path), "--tol", "1e-300"]
    result = CliRunner().invoke(main, args)
    assert result.exit_code == 2, result.output
    assert "❌ kernels" in result.output
    assert json.loads((tmp_path / "kernels.json").read_text(encoding="utf-8"))["tolerance"] == 1e-300


def test_invalid_config_exits_one(tmp_path, config_file):
    data = {**KERNEL_CONFIG, "rpf": {"poles": [{"alpha": 0.0, "c": [[1.0, 0.0]]}]}}
    result = CliRunner().invoke(main, ["kernels", "--config", config_file(data), "--out", str(tmp_path)])
    assert result.exit_code == 1
    assert "PoleBlock.alpha must be nonzero" in result.output
    assert not (tmp_path / "kernels.csv").exists()


def test_missing_config_exits_one(tmp_path):
    result = CliRunner().invoke(main, ["verify-fe", "--config", str(tmp_path / "absent.json")])
    assert result.exit_code == 1
    assert "cannot read config" in result.output


def test_subcommand_must_match_the_check(config_file):
    result = CliRunner().invoke(main, ["verify-first", "--config", config_file(KERNEL_CONFIG)])
    assert result.exit_code == 1
    assert "belongs to 'kernels'" in result.output


def test_config_is_required():
    result = CliRunner().invoke(main, ["verify-second"])
    assert result.exit_code == 1
    assert "verify-second needs --config" in result.output


def test_selfcheck_exits_zero(tmp_path):
    result = CliRunner().invoke(main, ["selfcheck", "--out", str(tmp_path)])
    assert result.exit_code == 0, result.output
    assert "✅ selfcheck" in result.output
    assert (tmp_path / "selfcheck.csv").exists()


if __name__ == "__main__":
    pytest.main([__file__, "-v"])

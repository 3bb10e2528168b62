import yaml

from hecke_lab.utils.yaml_writer import summary_path, write_summary


def test_summary_sits_next_to_report(tmp_path):
    assert summary_path(tmp_path / "verify-first.csv") == tmp_path / "verify-first.yaml"


def test_multiline_strings_use_block_style(tmp_path):
    summary = {"check": "first", "warnings": "Λ4 flipped\nΛ1 stopped at budget", "points": 3}
    path = write_summary(summary, tmp_path / "run.csv")
    text = path.read_text(encoding="utf-8")
    assert "warnings: |" in text
    assert "Λ4 flipped" in text
    assert yaml.safe_load(text) == summary


def test_key_order_is_kept(tmp_path):
    path = write_summary({"z": 1, "a": 2}, tmp_path / "run.csv")
    assert path.read_text(encoding="utf-8").splitlines() == ["z: 1", "a: 2"]


if __name__ == "__main__":
    import pytest

    pytest.main([__file__, "-v"])

"""Command-line interface smoke and contract tests."""

from pathlib import Path

import pytest

from chanex.cli import main
from chanex.harness import RESULT_COLUMNS, read_csv


def _tiny_flags(tmp_path, name):
    return [
        "--n-antennas", "32", "--subcarriers", "16", "--trials", "1",
        "--snr", "5", "--eta", "4", "--n-angles", "32", "--n-rings", "1",
        "--seed", "3", "--out", str(tmp_path / name),
    ]


class TestExperimentCommands:
    def test_pattern_nmse_runs(self, tmp_path, capsys):
        code = main(["pattern_nmse", *_tiny_flags(tmp_path, "p.csv"),
                     "--patterns", "sparse_random", "--algorithms", "asomp"])
        assert code == 0
        out = capsys.readouterr().out.strip()
        assert out.endswith("p.csv")
        rows = read_csv(tmp_path / "p.csv")
        assert list(rows[0].keys()) == list(RESULT_COLUMNS)

    def test_config_file_plus_override(self, tmp_path):
        cfg_file = tmp_path / "run.cfg"
        cfg_file.write_text("trials = 2\npatterns = sparse_random\nalgorithms = asomp\n")
        code = main(["pattern_nmse", "--config", str(cfg_file),
                     *_tiny_flags(tmp_path, "q.csv"), "--trials", "1",
                     "--patterns", "sparse_comb"])
        assert code == 0
        rows = read_csv(tmp_path / "q.csv")
        assert len(rows) == 1  # CLI override beats the file
        assert rows[0]["pattern_kind"] == "sparse_comb"

    def test_invalid_option_exits_nonzero(self, tmp_path, capsys):
        code = main(["pattern_nmse", "--algorithms", "bogus",
                     *_tiny_flags(tmp_path, "x.csv")])
        assert code == 2
        assert "error" in capsys.readouterr().err

    def test_negative_snr_grid_accepted(self, tmp_path):
        flags = _tiny_flags(tmp_path, "neg.csv")
        flags[flags.index("--snr") + 1] = "-10,0"
        code = main(["complexity", *flags, "--algorithms", "asomp"])
        assert code == 0
        rows = read_csv(tmp_path / "neg.csv")
        assert {row["snr_db"] for row in rows} == {"-10", "0"}


class TestPatternTools:
    def test_emit_and_validate(self, tmp_path, capsys):
        out_file = tmp_path / "pattern.txt"
        code = main(["patterns", "--kind", "sparse_random", "--n-antennas", "32",
                     "--eta", "4", "--seed", "5", "--out", str(out_file)])
        assert code == 0
        lines = out_file.read_text().splitlines()
        assert lines[0].startswith("#")  # 0-based header note
        assert len(lines[1].split(",")) == 8
        code = main(["patterns", "--validate", str(out_file),
                     "--n-antennas", "32", "--eta", "4"])
        assert code == 0
        assert "valid" in capsys.readouterr().out

    def test_validate_rejects_wrong_size(self, tmp_path, capsys):
        bad = tmp_path / "bad.txt"
        bad.write_text("# 0-based antenna indices\n0,1,2\n")
        code = main(["patterns", "--validate", str(bad),
                     "--n-antennas", "32", "--eta", "4"])
        assert code == 1

    def test_emit_coherence_min(self, tmp_path, capsys):
        code = main(["patterns", "--kind", "coherence_min_random",
                     "--n-antennas", "32", "--eta", "4", "--n-angles", "32",
                     "--n-rings", "1", "--seed", "6"])
        assert code == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert len(lines[-1].split(",")) == 8


class TestDictCommand:
    def test_emits_grid_metadata(self, tmp_path):
        out_file = tmp_path / "grid.csv"
        code = main(["dict", "--n-antennas", "32", "--n-angles", "16",
                     "--n-rings", "2", "--eta", "4", "--out", str(out_file)])
        assert code == 0
        rows = read_csv(out_file)
        assert len(rows) == 16 * 3
        assert rows[0]["distance_m"] == ""  # far ring serializes empty
        assert float(rows[0]["sin_angle"]) == -1.0

"""Experiment harness: config parsing, CSV schemas, determinism, counters."""

import numpy as np
import pytest

from chanex.harness import (
    CONVERGENCE_COLUMNS,
    CV_SUMMARY_COLUMNS,
    PROFILE_COLUMNS,
    RESULT_COLUMNS,
    build_experiment_config,
    coerce_option,
    cv_summary_path,
    load_config_file,
    noise_power_for_snr,
    parse_result_row,
    read_csv,
    run_experiment,
    write_csv,
)


def _tiny_options(tmp_path, name, **extra):
    options = {
        "n_antennas": 32,
        "n_subcarriers": 16,
        "trials": 2,
        "snr_grid": (5.0,),
        "eta_grid": (4,),
        "n_angles": 32,
        "n_rings": 1,
        "seed": 9,
        "out": str(tmp_path / name),
    }
    options.update(extra)
    return options


class TestConfigHandling:
    def test_coercion(self):
        assert coerce_option("snr_grid", "-10, -5,0") == (-10.0, -5.0, 0.0)
        assert coerce_option("eta_grid", "2,4") == (2, 4)
        assert coerce_option("algorithms", "asomp, somp") == ("asomp", "somp")
        assert coerce_option("trials", "7") == 7
        assert coerce_option("far_ring", "false") is False
        with pytest.raises(KeyError):
            coerce_option("bogus", "1")

    def test_config_file_round_trip(self, tmp_path):
        path = tmp_path / "exp.cfg"
        path.write_text(
            "# comment line\n"
            "trials = 5\n"
            "snr_grid = 0,5\n"
            "algorithms = asomp,cv-asomp  # inline comment\n"
            "timing = true\n"
        )
        options = load_config_file(path)
        assert options == {
            "trials": 5,
            "snr_grid": (0.0, 5.0),
            "algorithms": ("asomp", "cv-asomp"),
            "timing": True,
        }

    def test_kind_defaults_apply(self):
        cfg = build_experiment_config("pattern_nmse", {})
        assert cfg.patterns == (
            "dense_uniform", "sparse_comb", "sparse_random", "coherence_min_random")
        cfg2 = build_experiment_config("cv_sweep", {})
        assert cfg2.snr_grid == (0.0,)

    def test_explicit_options_win(self):
        cfg = build_experiment_config("pattern_nmse", {"patterns": ("sparse_comb",)})
        assert cfg.patterns == ("sparse_comb",)

    def test_validation(self):
        with pytest.raises(ValueError):
            build_experiment_config("bogus_kind", {})
        with pytest.raises(ValueError):
            build_experiment_config("pattern_nmse", {"algorithms": ("bogus",)})
        with pytest.raises(ValueError):
            build_experiment_config("cv_sweep", {"alpha_grid": (0.0, 0.5)})


class TestCsvPlumbing:
    def test_nine_significant_digits(self, tmp_path):
        path = write_csv(tmp_path / "x.csv", ("a", "b", "c"),
                         [[1.23456789123456, None, -13]])
        text = path.read_text()
        assert text.splitlines()[1] == "1.23456789,,-13"

    def test_round_trip_parse(self, tmp_path):
        rows = [["pattern_nmse", "asomp", "sparse_comb", 5.0, 4, None, 0,
                 -12.345678912, None, 3, 3, 4096, None]]
        path = write_csv(tmp_path / "y.csv", RESULT_COLUMNS, rows)
        parsed = parse_result_row(read_csv(path)[0])
        assert parsed["experiment"] == "pattern_nmse"
        assert parsed["algorithm"] == "asomp"
        assert parsed["snr_db"] == 5.0
        assert parsed["eta"] == 4
        assert parsed["alpha"] is None
        # 9 significant digits keep the relative round-trip error below 5e-9
        assert parsed["nmse_db"] == pytest.approx(-12.345678912, rel=5e-9)
        assert parsed["rate_bps_hz"] is None
        assert parsed["correlation_ops"] == 4096
        assert parsed["wall_ms"] is None


class TestNoiseCalibration:
    def test_matches_received_snr(self):
        rng = np.random.default_rng(0)
        h = 1e-5 * (rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8)))
        sigma2 = noise_power_for_snr(h, 10.0)
        assert sigma2 == pytest.approx(np.mean(np.abs(h) ** 2) / 10.0)


class TestRunners:
    def test_pattern_nmse_row_accounting(self, tmp_path):
        options = _tiny_options(tmp_path, "pat.csv",
                                patterns=("dense_uniform", "sparse_random"),
                                algorithms=("asomp",))
        cfg = build_experiment_config("pattern_nmse", options)
        paths = run_experiment(cfg)
        rows = read_csv(paths[0])
        # trials x patterns x algorithms rows plus the header already removed
        assert len(rows) == 2 * 2 * 1
        assert list(rows[0].keys()) == list(RESULT_COLUMNS)
        assert all(row["wall_ms"] == "" for row in rows)

    def test_byte_identical_reruns(self, tmp_path):
        options = _tiny_options(tmp_path, "det.csv", patterns=("sparse_random",))
        cfg = build_experiment_config("pattern_nmse", options)
        first = run_experiment(cfg)[0].read_bytes()
        second = run_experiment(cfg)[0].read_bytes()
        assert first == second

    def test_complexity_counters_and_pairing(self, tmp_path):
        options = _tiny_options(tmp_path, "cx.csv",
                                algorithms=("asomp", "cv-asomp", "somp"),
                                fixed_paths=3)
        cfg = build_experiment_config("complexity", options)
        rows = [parse_result_row(r) for r in read_csv(run_experiment(cfg)[0])]
        by_alg = {}
        for row in rows:
            by_alg.setdefault(row["algorithm"], []).append(row)
        assert set(by_alg) == {"asomp", "cv-asomp", "somp"}
        for row in by_alg["somp"]:
            assert row["iterations"] == 3
        # CV correlation work per iteration is the training fraction T/M.
        split_ratio = 5 / 16  # ceil(0.3 * 16) / 16
        for full, cv in zip(by_alg["asomp"], by_alg["cv-asomp"]):
            per_full = full["correlation_ops"] / full["iterations"]
            per_cv = cv["correlation_ops"] / cv["iterations"]
            assert per_cv / per_full == pytest.approx(split_ratio, abs=1e-12)

    def test_rate_experiment_emits_rates(self, tmp_path):
        options = _tiny_options(tmp_path, "rate.csv", algorithms=("asomp",),
                                users=None)
        options["n_users"] = 2
        cfg = build_experiment_config("rate_vs_snr", options)
        rows = [parse_result_row(r) for r in read_csv(run_experiment(cfg)[0])]
        assert len(rows) == 2
        for row in rows:
            assert row["rate_bps_hz"] is not None and row["rate_bps_hz"] > 0
            assert row["L_hat"] is None

    def test_convergence_schema(self, tmp_path):
        options = _tiny_options(tmp_path, "conv.csv", convergence_iters=3)
        cfg = build_experiment_config("convergence", options)
        rows = read_csv(run_experiment(cfg)[0])
        assert list(rows[0].keys()) == list(CONVERGENCE_COLUMNS)
        labels = {row["algorithm"] for row in rows}
        assert labels == {"asigw-wolfe", "asigw-armijo"}
        one = [r for r in rows
               if r["algorithm"] == "asigw-wolfe" and r["trial"] == "0"]
        objectives = [float(r["objective"]) for r in one]
        assert len(objectives) == 4  # init + 3 iterations
        assert all(b <= a for a, b in zip(objectives, objectives[1:]))

    def test_cv_sweep_summary(self, tmp_path):
        options = _tiny_options(tmp_path, "cv.csv", alpha_grid=(0.3, 0.5), trials=3)
        cfg = build_experiment_config("cv_sweep", options)
        paths = run_experiment(cfg)
        assert paths[1] == cv_summary_path(cfg.out)
        summary = read_csv(paths[1])
        assert list(summary[0].keys()) == list(CV_SUMMARY_COLUMNS)
        assert len(summary) == 2
        ops_eff = [float(r["efficiency_ops_pct"]) for r in summary]
        assert max(ops_eff) == pytest.approx(100.0)
        assert all(r["efficiency_pct"] == "" for r in summary)  # timing off

    def test_radiation_profile_schema(self, tmp_path):
        options = _tiny_options(tmp_path, "rad.csv", trials=2,
                                angle_points=41, distance_points=21)
        cfg = build_experiment_config("radiation_profile", options)
        rows = read_csv(run_experiment(cfg)[0])
        assert list(rows[0].keys()) == list(PROFILE_COLUMNS)
        sweeps = {row["sweep"] for row in rows}
        assert sweeps == {"angle", "distance"}
        det_trials = {row["trial"] for row in rows
                      if row["pattern_kind"] == "dense_uniform"}
        assert det_trials == {"0"}
        random_trials = {row["trial"] for row in rows
                         if row["pattern_kind"] == "sparse_random"}
        assert random_trials == {"0", "1"}
        peak = [float(r["power"]) for r in rows
                if r["sweep"] == "angle" and abs(float(r["coordinate"])) < 1e-9]
        assert all(p == pytest.approx(1.0) for p in peak)

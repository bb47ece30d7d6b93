"""Seeded Monte-Carlo experiment harness writing CSV result tables.

Each experiment kind sweeps a grid, replays seeded trials, and emits one row
per (grid point, trial, algorithm/pattern). Per-trial randomness derives
deterministically from (master seed, experiment, grid indices, trial index),
so a fixed configuration reproduces its output byte for byte. Wall-clock
timing is off by default to preserve that property; enable it explicitly for
efficiency measurements.
"""

from __future__ import annotations

import math
import sys
import time
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np

from .channel import generate_channel, sample_scenario
from .config import SystemConfig
from .dictionary import build_polar_dictionary
from .measurement import complex_noise, select_rows
from .metrics import RateContext, achievable_rate, nmse, to_db
from .patterns import (
    COHERENCE_MIN_RANDOM,
    DENSE_UNIFORM,
    PATTERN_KINDS,
    SPARSE_COMB,
    SPARSE_RANDOM,
    coherence_min_random,
    dense_uniform,
    radiation_profile,
    sparse_comb,
    sparse_random,
)
from .pursuit import SompExtrapolator
from .refine import ARMIJO, STRONG_WOLFE, GridlessExtrapolator

EXPERIMENT_KINDS = (
    "radiation_profile",
    "pattern_nmse",
    "convergence",
    "cv_sweep",
    "rate_vs_snr",
    "nmse_vs_compression",
    "complexity",
)
KIND_IDS = {kind: i for i, kind in enumerate(EXPERIMENT_KINDS)}

ALGORITHMS = ("asomp", "cv-asomp", "asigw", "cv-asigw", "somp", "sigw")

RESULT_COLUMNS = (
    "experiment",
    "algorithm",
    "pattern_kind",
    "snr_db",
    "eta",
    "alpha",
    "trial",
    "nmse_db",
    "rate_bps_hz",
    "L_hat",
    "iterations",
    "correlation_ops",
    "wall_ms",
)
PROFILE_COLUMNS = ("experiment", "pattern_kind", "trial", "sweep", "coordinate", "power")
CONVERGENCE_COLUMNS = ("experiment", "algorithm", "eta", "snr_db", "trial", "iteration", "objective")
CV_SUMMARY_COLUMNS = (
    "experiment",
    "eta",
    "snr_db",
    "alpha",
    "nmse_db_full",
    "nmse_db_cv",
    "accuracy_pct",
    "efficiency_pct",
    "efficiency_ops_pct",
    "corr_ops_full",
    "corr_ops_cv",
)


@dataclass(frozen=True)
class ExperimentConfig:
    """Flat description of one experiment run (grids, sizes, seeds, output)."""

    kind: str
    n_antennas: int = 128
    n_subcarriers: int = 128
    n_users: int = 3
    carrier_hz: float = 28e9
    bandwidth_hz: float = 28e6
    snr_grid: tuple = (-10.0, -5.0, 0.0, 5.0, 10.0, 15.0)
    eta_grid: tuple = (8,)
    alpha_grid: tuple = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)
    algorithms: tuple = ("asomp",)
    patterns: tuple = (COHERENCE_MIN_RANDOM,)
    trials: int = 200
    seed: int = 1
    out: str = "results.csv"
    scenario_paths: int = 3
    beta: float = 1.5
    n_angles: int | None = None
    n_rings: int | None = None
    far_ring: bool = True
    rho_min: float = 3.0
    grid_min_distance: float = 10.0
    cv_ratio: float = 0.3
    refine_iters: int = 5
    baseline_refine_iters: int = 10
    fixed_paths: int = 6
    n_candidates: int = 10
    r_min: float = 10.0
    convergence_iters: int = 20
    angle_points: int = 801
    distance_points: int = 301
    timing: bool = False

    def __post_init__(self):
        if self.kind not in EXPERIMENT_KINDS:
            raise ValueError(f"unknown experiment kind {self.kind!r}")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        for grid, name in ((self.snr_grid, "snr_grid"), (self.eta_grid, "eta_grid"),
                           (self.alpha_grid, "alpha_grid")):
            if len(grid) == 0:
                raise ValueError(f"{name} must not be empty")
        for alg in self.algorithms:
            if alg not in ALGORITHMS:
                raise ValueError(f"unknown algorithm {alg!r}")
        for pat in self.patterns:
            if pat not in PATTERN_KINDS:
                raise ValueError(f"unknown pattern kind {pat!r}")
        for alpha in self.alpha_grid:
            if not 0.0 < alpha < 1.0:
                raise ValueError("alpha grid values must lie in (0, 1)")

    def system(self, eta: int) -> SystemConfig:
        return SystemConfig(
            n_antennas=self.n_antennas,
            n_subcarriers=self.n_subcarriers,
            n_users=self.n_users,
            carrier_hz=self.carrier_hz,
            bandwidth_hz=self.bandwidth_hz,
            compression=int(eta),
        )


#: Per-kind defaults applied on top of the dataclass defaults for fields the
#: caller did not set explicitly.
KIND_DEFAULTS = {
    "radiation_profile": {"trials": 20, "patterns": PATTERN_KINDS},
    "pattern_nmse": {"patterns": PATTERN_KINDS, "algorithms": ("asomp",)},
    "convergence": {"snr_grid": (5.0,), "eta_grid": (8, 4), "trials": 25},
    "cv_sweep": {"snr_grid": (0.0,), "algorithms": ("asomp", "cv-asomp")},
    "rate_vs_snr": {"eta_grid": (4,), "algorithms": ALGORITHMS, "trials": 100},
    "nmse_vs_compression": {"snr_grid": (5.0,), "eta_grid": (2, 4, 8), "algorithms": ALGORITHMS},
    "complexity": {"algorithms": ("asomp", "cv-asomp", "somp"), "trials": 100},
}

_FIELD_TYPES = {f.name: f for f in fields(ExperimentConfig)}
_GRID_FLOAT_KEYS = {"snr_grid", "alpha_grid"}
_GRID_INT_KEYS = {"eta_grid"}
_GRID_STR_KEYS = {"algorithms", "patterns"}
_BOOL_KEYS = {"far_ring", "timing"}
_INT_KEYS = {
    "n_antennas", "n_subcarriers", "n_users", "trials", "seed", "scenario_paths",
    "refine_iters", "baseline_refine_iters", "fixed_paths", "n_candidates",
    "convergence_iters", "angle_points", "distance_points", "n_angles", "n_rings",
}
_FLOAT_KEYS = {"carrier_hz", "bandwidth_hz", "beta", "rho_min", "cv_ratio", "r_min",
               "grid_min_distance"}


def coerce_option(key: str, raw: str):
    """Parse one textual config value into its typed form."""
    if key not in _FIELD_TYPES:
        raise KeyError(f"unknown config key {key!r}")
    raw = raw.strip()
    if key in _GRID_FLOAT_KEYS:
        return tuple(float(tok) for tok in raw.split(",") if tok.strip())
    if key in _GRID_INT_KEYS:
        return tuple(int(tok) for tok in raw.split(",") if tok.strip())
    if key in _GRID_STR_KEYS:
        return tuple(tok.strip() for tok in raw.split(",") if tok.strip())
    if key in _BOOL_KEYS:
        if raw.lower() in ("true", "1", "yes"):
            return True
        if raw.lower() in ("false", "0", "no"):
            return False
        raise ValueError(f"boolean key {key} got {raw!r}")
    if key in _INT_KEYS:
        return int(raw)
    if key in _FLOAT_KEYS:
        return float(raw)
    return raw


def load_config_file(path) -> dict:
    """Read a flat key=value config file (``#`` comments, blank lines ok)."""
    options = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, raw = line.split("=", 1)
        options[key.strip()] = coerce_option(key.strip(), raw)
    return options


def build_experiment_config(kind: str, provided: dict | None = None) -> ExperimentConfig:
    """Merge dataclass defaults, per-kind defaults and explicit options."""
    merged = dict(KIND_DEFAULTS.get(kind, {}))
    merged.update({k: v for k, v in (provided or {}).items() if v is not None})
    merged.pop("kind", None)
    return ExperimentConfig(kind=kind, **merged)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    value = float(value)
    if math.isnan(value):
        return ""
    return f"{value:.9g}"


def write_csv(path, header, rows) -> Path:
    """Write rows (iterables of cells) under a fixed header, LF newlines."""
    path = Path(path)
    if path.parent != Path(""):
        path.parent.mkdir(parents=True, exist_ok=True)
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(cell) for cell in row) for row in rows)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
    return path


def read_csv(path) -> list[dict]:
    """Read a harness CSV back into a list of per-row dicts of strings."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    header = lines[0].split(",")
    return [dict(zip(header, line.split(","))) for line in lines[1:] if line]


def parse_result_row(row: dict) -> dict:
    """Round-trip one result row into typed fields (None for empties)."""
    def opt(key, conv):
        raw = row[key]
        return None if raw == "" else conv(raw)

    return {
        "experiment": row["experiment"],
        "algorithm": row["algorithm"],
        "pattern_kind": row["pattern_kind"],
        "snr_db": opt("snr_db", float),
        "eta": opt("eta", int),
        "alpha": opt("alpha", float),
        "trial": opt("trial", int),
        "nmse_db": opt("nmse_db", float),
        "rate_bps_hz": opt("rate_bps_hz", float),
        "L_hat": opt("L_hat", int),
        "iterations": opt("iterations", int),
        "correlation_ops": opt("correlation_ops", int),
        "wall_ms": opt("wall_ms", float),
    }


def make_pattern(kind: str, system: SystemConfig, dictionary, rng, cfg: ExperimentConfig):
    if kind == DENSE_UNIFORM:
        return dense_uniform(system)
    if kind == SPARSE_COMB:
        return sparse_comb(system)
    if kind == SPARSE_RANDOM:
        return sparse_random(system, rng)
    if kind == COHERENCE_MIN_RANDOM:
        return coherence_min_random(system, dictionary, n_candidates=cfg.n_candidates, rng=rng)
    raise ValueError(f"unknown pattern kind {kind!r}")


def make_estimator(algorithm: str, dictionary, pattern, sigma: float, cfg: ExperimentConfig):
    if algorithm == "asomp":
        return SompExtrapolator(dictionary, pattern, sigma=sigma)
    if algorithm == "cv-asomp":
        return SompExtrapolator(dictionary, pattern, sigma=sigma, cv_ratio=cfg.cv_ratio)
    if algorithm == "somp":
        return SompExtrapolator(dictionary, pattern, n_paths=cfg.fixed_paths)
    if algorithm == "asigw":
        return GridlessExtrapolator(
            dictionary, pattern, sigma=sigma, n_iter=cfg.refine_iters,
            line_search=STRONG_WOLFE, rho_min=cfg.rho_min,
        )
    if algorithm == "cv-asigw":
        return GridlessExtrapolator(
            dictionary, pattern, sigma=sigma, cv_ratio=cfg.cv_ratio,
            n_iter=cfg.refine_iters, line_search=STRONG_WOLFE, rho_min=cfg.rho_min,
        )
    if algorithm == "sigw":
        return GridlessExtrapolator(
            dictionary, pattern, n_paths=cfg.fixed_paths,
            n_iter=cfg.baseline_refine_iters, line_search=ARMIJO, rho_min=cfg.rho_min,
        )
    raise ValueError(f"unknown algorithm {algorithm!r}")


def _build_dictionary(cfg: ExperimentConfig, system: SystemConfig):
    return build_polar_dictionary(
        system,
        n_angles=cfg.n_angles,
        n_rings=cfg.n_rings,
        beta=cfg.beta,
        far_ring=cfg.far_ring,
        min_distance=cfg.grid_min_distance,
    )


def _trial_streams(cfg, *key, count):
    seq = np.random.SeedSequence([int(cfg.seed), *[int(k) for k in key]])
    return [np.random.default_rng(child) for child in seq.spawn(count)]


def noise_power_for_snr(channel_entries: np.ndarray, snr_db: float) -> float:
    """Noise power giving the requested per-entry received SNR.

    Physical path gains leave the channel entries many orders of magnitude
    below unit power, so the SNR axis references the mean received sample
    power rather than the raw pilot power.
    """
    mean_power = float(np.mean(np.abs(channel_entries) ** 2))
    return mean_power * 10.0 ** (-snr_db / 10.0)


@dataclass
class TrialData:
    channel: np.ndarray
    noisy: np.ndarray
    sigma: float
    patterns: dict


def _make_trial(cfg, system, dictionary, key, snr_db, pattern_kinds) -> TrialData:
    streams = _trial_streams(cfg, *key, count=2 + len(pattern_kinds))
    paths = sample_scenario(streams[0], cfg.scenario_paths, system)
    channel = generate_channel(paths, system).entries
    sigma2 = noise_power_for_snr(channel, snr_db)
    noisy = channel + complex_noise(channel.shape, sigma2, streams[1])
    patterns = {
        kind: make_pattern(kind, system, dictionary, streams[2 + i], cfg)
        for i, kind in enumerate(pattern_kinds)
    }
    return TrialData(channel=channel, noisy=noisy, sigma=math.sqrt(sigma2), patterns=patterns)


def _timed_fit(estimator, observations, timing: bool):
    start = time.perf_counter()
    estimator.fit(observations)
    wall = (time.perf_counter() - start) * 1e3
    return wall if timing else None


def _result_row(cfg, *, algorithm="", pattern_kind="", snr_db=None, eta=None, alpha=None,
                trial=None, nmse_db=None, rate=None, estimator=None, wall=None):
    l_hat = iterations = ops = None
    if estimator is not None:
        l_hat = estimator.n_paths_
        iterations = estimator.counters_.iterations
        ops = estimator.counters_.correlation_ops
    return [
        cfg.kind, algorithm, pattern_kind, snr_db, eta, alpha, trial,
        nmse_db, rate, l_hat, iterations, ops, wall,
    ]


def _progress(cfg, message):
    print(f"[{cfg.kind}] {message}", file=sys.stderr, flush=True)


def run_pattern_nmse(cfg: ExperimentConfig):
    rows = []
    for eta_i, eta in enumerate(cfg.eta_grid):
        system = cfg.system(eta)
        dictionary = _build_dictionary(cfg, system)
        for snr_i, snr_db in enumerate(cfg.snr_grid):
            _progress(cfg, f"eta={eta} snr={snr_db} dB ({cfg.trials} trials)")
            for trial in range(cfg.trials):
                data = _make_trial(
                    cfg, system, dictionary,
                    (KIND_IDS[cfg.kind], eta_i, snr_i, trial), snr_db, cfg.patterns,
                )
                for pattern_kind in cfg.patterns:
                    pattern = data.patterns[pattern_kind]
                    observations = select_rows(data.noisy, pattern)
                    for algorithm in cfg.algorithms:
                        est = make_estimator(algorithm, dictionary, pattern, data.sigma, cfg)
                        wall = _timed_fit(est, observations, cfg.timing)
                        rows.append(_result_row(
                            cfg, algorithm=algorithm, pattern_kind=pattern_kind,
                            snr_db=snr_db, eta=eta, trial=trial,
                            nmse_db=to_db(nmse(data.channel, est.channel_)),
                            estimator=est, wall=wall,
                        ))
    return [write_csv(cfg.out, RESULT_COLUMNS, rows)]


def run_algorithm_grid(cfg: ExperimentConfig):
    """Shared runner for nmse_vs_compression and complexity sweeps."""
    pattern_kind = cfg.patterns[0]
    rows = []
    for eta_i, eta in enumerate(cfg.eta_grid):
        system = cfg.system(eta)
        dictionary = _build_dictionary(cfg, system)
        for snr_i, snr_db in enumerate(cfg.snr_grid):
            _progress(cfg, f"eta={eta} snr={snr_db} dB ({cfg.trials} trials)")
            for trial in range(cfg.trials):
                data = _make_trial(
                    cfg, system, dictionary,
                    (KIND_IDS[cfg.kind], eta_i, snr_i, trial), snr_db, (pattern_kind,),
                )
                pattern = data.patterns[pattern_kind]
                observations = select_rows(data.noisy, pattern)
                for algorithm in cfg.algorithms:
                    est = make_estimator(algorithm, dictionary, pattern, data.sigma, cfg)
                    wall = _timed_fit(est, observations, cfg.timing)
                    rows.append(_result_row(
                        cfg, algorithm=algorithm, pattern_kind=pattern_kind,
                        snr_db=snr_db, eta=eta, trial=trial,
                        nmse_db=to_db(nmse(data.channel, est.channel_)),
                        estimator=est, wall=wall,
                    ))
    return [write_csv(cfg.out, RESULT_COLUMNS, rows)]


def run_rate_vs_snr(cfg: ExperimentConfig):
    pattern_kind = cfg.patterns[0]
    rows = []
    for eta_i, eta in enumerate(cfg.eta_grid):
        system = cfg.system(eta)
        dictionary = _build_dictionary(cfg, system)
        n_users = system.n_users
        for snr_i, snr_db in enumerate(cfg.snr_grid):
            _progress(cfg, f"eta={eta} snr={snr_db} dB ({cfg.trials} trials)")
            for trial in range(cfg.trials):
                streams = _trial_streams(
                    cfg, KIND_IDS[cfg.kind], eta_i, snr_i, trial, count=2 * n_users + 1,
                )
                channels = [
                    generate_channel(
                        sample_scenario(streams[u], cfg.scenario_paths, system), system
                    ).entries
                    for u in range(n_users)
                ]
                stacked = np.stack(channels)  # (U, N, M)
                sigma2 = noise_power_for_snr(stacked, snr_db)
                sigma = math.sqrt(sigma2)
                noisy = [
                    channels[u] + complex_noise(channels[u].shape, sigma2, streams[n_users + u])
                    for u in range(n_users)
                ]
                pattern = make_pattern(pattern_kind, system, dictionary, streams[-1], cfg)
                true_stack = np.stack([h.T for h in channels], axis=2)  # (M, N, U)
                for algorithm in cfg.algorithms:
                    wall_total = 0.0
                    estimates = []
                    ests = []
                    for u in range(n_users):
                        est = make_estimator(algorithm, dictionary, pattern, sigma, cfg)
                        wall = _timed_fit(est, select_rows(noisy[u], pattern), cfg.timing)
                        wall_total += wall or 0.0
                        estimates.append(est.channel_.T)
                        ests.append(est)
                    est_stack = np.stack(estimates, axis=2)
                    ctx = RateContext(
                        true=true_stack, est=est_stack, power=system.pilot_power,
                        noise_power=sigma2,
                    )
                    rate = float(np.mean([achievable_rate(ctx, u) for u in range(n_users)]))
                    mean_nmse = float(np.mean(
                        [nmse(channels[u], ests[u].channel_) for u in range(n_users)]
                    ))
                    row = _result_row(
                        cfg, algorithm=algorithm, pattern_kind=pattern_kind, snr_db=snr_db,
                        eta=eta, trial=trial, nmse_db=to_db(mean_nmse), rate=rate,
                        wall=wall_total if cfg.timing else None,
                    )
                    row[RESULT_COLUMNS.index("iterations")] = sum(
                        e.counters_.iterations for e in ests
                    )
                    row[RESULT_COLUMNS.index("correlation_ops")] = sum(
                        e.counters_.correlation_ops for e in ests
                    )
                    rows.append(row)
    return [write_csv(cfg.out, RESULT_COLUMNS, rows)]


def run_convergence(cfg: ExperimentConfig):
    pattern_kind = cfg.patterns[0]
    variants = (("asigw-wolfe", STRONG_WOLFE), ("asigw-armijo", ARMIJO))
    rows = []
    for eta_i, eta in enumerate(cfg.eta_grid):
        system = cfg.system(eta)
        dictionary = _build_dictionary(cfg, system)
        snr_db = cfg.snr_grid[0]
        _progress(cfg, f"eta={eta} snr={snr_db} dB ({cfg.trials} trials)")
        for trial in range(cfg.trials):
            data = _make_trial(
                cfg, system, dictionary,
                (KIND_IDS[cfg.kind], eta_i, 0, trial), snr_db, (pattern_kind,),
            )
            pattern = data.patterns[pattern_kind]
            observations = select_rows(data.noisy, pattern)
            for label, search in variants:
                est = GridlessExtrapolator(
                    dictionary, pattern, sigma=data.sigma,
                    n_iter=cfg.convergence_iters, line_search=search, rho_min=cfg.rho_min,
                )
                est.fit(observations)
                for iteration, objective in enumerate(est.objective_history_):
                    rows.append([cfg.kind, label, eta, snr_db, trial, iteration, objective])
    return [write_csv(cfg.out, CONVERGENCE_COLUMNS, rows)]


def cv_summary_path(out) -> Path:
    out = Path(out)
    return out.with_name(out.stem + "_summary" + out.suffix)


def run_cv_sweep(cfg: ExperimentConfig):
    """Paired accuracy/efficiency sweep over the cross-validation ratio.

    Both algorithms see identical scenarios and noise. The summary file
    reports the accuracy percentage (relative NMSE agreement), wall-clock
    efficiency (fastest ratio = 100), and the same efficiency computed from
    deterministic correlation counters.
    """
    pattern_kind = cfg.patterns[0]
    eta = cfg.eta_grid[0]
    snr_db = cfg.snr_grid[0]
    system = cfg.system(eta)
    dictionary = _build_dictionary(cfg, system)
    _progress(cfg, f"eta={eta} snr={snr_db} dB ({cfg.trials} trials, "
                   f"{len(cfg.alpha_grid)} ratios)")

    trials = []
    rows = []
    full_nmse = []
    full_ops = 0
    for trial in range(cfg.trials):
        data = _make_trial(
            cfg, system, dictionary, (KIND_IDS[cfg.kind], 0, 0, trial), snr_db, (pattern_kind,),
        )
        pattern = data.patterns[pattern_kind]
        observations = select_rows(data.noisy, pattern)
        trials.append((data, pattern, observations))
        est = SompExtrapolator(dictionary, pattern, sigma=data.sigma)
        wall = _timed_fit(est, observations, cfg.timing)
        value = nmse(data.channel, est.channel_)
        full_nmse.append(value)
        full_ops += est.counters_.correlation_ops
        rows.append(_result_row(
            cfg, algorithm="asomp", pattern_kind=pattern_kind, snr_db=snr_db, eta=eta,
            trial=trial, nmse_db=to_db(value), estimator=est, wall=wall,
        ))

    mean_full = float(np.mean(full_nmse))
    walls = {}
    ops = {}
    cv_means = {}
    for alpha in cfg.alpha_grid:
        wall_total = 0.0
        ops_total = 0
        values = []
        for trial, (data, pattern, observations) in enumerate(trials):
            est = SompExtrapolator(
                dictionary, pattern, sigma=data.sigma, cv_ratio=alpha,
            )
            wall = _timed_fit(est, observations, cfg.timing)
            wall_total += wall or 0.0
            ops_total += est.counters_.correlation_ops
            value = nmse(data.channel, est.channel_)
            values.append(value)
            rows.append(_result_row(
                cfg, algorithm="cv-asomp", pattern_kind=pattern_kind, snr_db=snr_db,
                eta=eta, alpha=alpha, trial=trial, nmse_db=to_db(value),
                estimator=est, wall=wall,
            ))
        walls[alpha] = wall_total
        ops[alpha] = ops_total
        cv_means[alpha] = float(np.mean(values))

    min_wall = min(walls.values()) if cfg.timing else None
    min_ops = min(ops.values())
    summary = []
    for alpha in cfg.alpha_grid:
        accuracy = (1.0 - abs(mean_full - cv_means[alpha]) / mean_full) * 100.0
        efficiency = (min_wall / walls[alpha] * 100.0) if cfg.timing and walls[alpha] else None
        efficiency_ops = min_ops / ops[alpha] * 100.0 if ops[alpha] else None
        summary.append([
            cfg.kind, eta, snr_db, alpha, to_db(mean_full), to_db(cv_means[alpha]),
            accuracy, efficiency, efficiency_ops, full_ops, ops[alpha],
        ])
    out = write_csv(cfg.out, RESULT_COLUMNS, rows)
    out_summary = write_csv(cv_summary_path(cfg.out), CV_SUMMARY_COLUMNS, summary)
    return [out, out_summary]


def run_radiation_profile(cfg: ExperimentConfig):
    eta = cfg.eta_grid[0]
    system = cfg.system(eta)
    dictionary = _build_dictionary(cfg, system)
    angles = np.linspace(-1.0, 1.0, cfg.angle_points)
    distances = np.linspace(cfg.r_min, 80.0, cfg.distance_points)
    deterministic = (DENSE_UNIFORM, SPARSE_COMB)
    rows = []
    _progress(cfg, f"eta={eta} ({cfg.trials} pattern draws)")
    for trial in range(cfg.trials):
        streams = _trial_streams(
            cfg, KIND_IDS[cfg.kind], 0, trial, count=max(1, len(cfg.patterns)),
        )
        for i, pattern_kind in enumerate(cfg.patterns):
            if pattern_kind in deterministic and trial > 0:
                continue  # identical every draw
            pattern = make_pattern(pattern_kind, system, dictionary, streams[i], cfg)
            angular = radiation_profile(pattern, angles, cfg.r_min, system, r_min=cfg.r_min)
            for coord, power in zip(angles, angular):
                rows.append([cfg.kind, pattern_kind, trial, "angle", coord, power])
            radial = radiation_profile(pattern, 0.0, distances, system, r_min=cfg.r_min)
            for coord, power in zip(distances, radial):
                rows.append([cfg.kind, pattern_kind, trial, "distance", coord, power])
    return [write_csv(cfg.out, PROFILE_COLUMNS, rows)]


_RUNNERS = {
    "radiation_profile": run_radiation_profile,
    "pattern_nmse": run_pattern_nmse,
    "convergence": run_convergence,
    "cv_sweep": run_cv_sweep,
    "rate_vs_snr": run_rate_vs_snr,
    "nmse_vs_compression": run_algorithm_grid,
    "complexity": run_algorithm_grid,
}


def run_experiment(cfg: ExperimentConfig):
    """Run one experiment; returns the list of CSV paths written."""
    return _RUNNERS[cfg.kind](cfg)


def dictionary_metadata_rows(dictionary):
    """Grid metadata rows for the ``dict`` CLI subcommand."""
    rows = []
    for p in range(dictionary.n_columns):
        i_angle, i_ring = dictionary.column_location(p)
        dist = dictionary.col_distance[p]
        rows.append([
            p, i_angle, i_ring, dictionary.col_angle[p],
            None if math.isinf(dist) else dist,
        ])
    return rows

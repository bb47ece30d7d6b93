"""Command-line entry point: experiment subcommands plus pattern/grid tools."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .dictionary import build_polar_dictionary
from .harness import (
    EXPERIMENT_KINDS,
    build_experiment_config,
    coerce_option,
    dictionary_metadata_rows,
    load_config_file,
    run_experiment,
    write_csv,
)
from .patterns import PATTERN_KINDS, parse_pattern

_GRID_FLAGS = {
    "snr": "snr_grid",
    "eta": "eta_grid",
    "alpha": "alpha_grid",
    "algorithms": "algorithms",
    "patterns": "patterns",
}
_VALUE_FLAGS = {
    "trials": "trials",
    "seed": "seed",
    "out": "out",
    "n_antennas": "n_antennas",
    "subcarriers": "n_subcarriers",
    "users": "n_users",
    "cv_ratio": "cv_ratio",
    "fixed_paths": "fixed_paths",
    "refine_iters": "refine_iters",
    "n_angles": "n_angles",
    "n_rings": "n_rings",
    "beta": "beta",
    "rho_min": "rho_min",
    "scenario_paths": "scenario_paths",
    "candidates": "n_candidates",
}


def _add_experiment_flags(parser: argparse.ArgumentParser):
    parser.add_argument("--config", help="flat key=value config file")
    parser.add_argument("--seed", type=int, help="master seed")
    parser.add_argument("--out", help="output CSV path")
    parser.add_argument("--trials", type=int, help="Monte-Carlo trials per grid point")
    parser.add_argument("--snr", help="comma-separated SNR grid in dB")
    parser.add_argument("--eta", help="comma-separated compression-rate grid")
    parser.add_argument("--alpha", help="comma-separated CV-ratio grid")
    parser.add_argument("--algorithms", help="comma-separated algorithm list")
    parser.add_argument("--patterns", help="comma-separated pattern-kind list")
    parser.add_argument("--n-antennas", dest="n_antennas", type=int)
    parser.add_argument("--subcarriers", type=int)
    parser.add_argument("--users", type=int)
    parser.add_argument("--cv-ratio", dest="cv_ratio", type=float)
    parser.add_argument("--fixed-paths", dest="fixed_paths", type=int)
    parser.add_argument("--refine-iters", dest="refine_iters", type=int)
    parser.add_argument("--n-angles", dest="n_angles", type=int)
    parser.add_argument("--n-rings", dest="n_rings", type=int)
    parser.add_argument("--beta", type=float)
    parser.add_argument("--rho-min", dest="rho_min", type=float)
    parser.add_argument("--scenario-paths", dest="scenario_paths", type=int)
    parser.add_argument("--candidates", type=int)
    parser.add_argument("--no-far-ring", action="store_true",
                        help="build the literal finite-distance grid only")
    parser.add_argument("--timing", action="store_true",
                        help="record wall-clock times (breaks byte determinism)")


def _collect_options(args: argparse.Namespace) -> dict:
    options = {}
    if args.config:
        options.update(load_config_file(args.config))
    for flag, key in _GRID_FLAGS.items():
        raw = getattr(args, flag if flag != "algorithms" else "algorithms", None)
        if raw is not None:
            options[key] = coerce_option(key, raw) if isinstance(raw, str) else raw
    for flag, key in _VALUE_FLAGS.items():
        value = getattr(args, flag, None)
        if value is not None:
            options[key] = value
    if args.no_far_ring:
        options["far_ring"] = False
    if args.timing:
        options["timing"] = True
    return options


def _run_kind(kind: str, args: argparse.Namespace) -> int:
    cfg = build_experiment_config(kind, _collect_options(args))
    for path in run_experiment(cfg):
        print(path)
    return 0


def _system_from_args(args) -> "SystemConfig":
    from .config import SystemConfig

    return SystemConfig(
        n_antennas=args.n_antennas or 128,
        compression=int(args.eta) if args.eta else 8,
    )


def _cmd_patterns(args) -> int:
    from .harness import build_experiment_config, make_pattern

    system = _system_from_args(args)
    if args.validate:
        text = Path(args.validate).read_text(encoding="utf-8")
        lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
        for line in lines:
            pattern = parse_pattern(line, system.n_antennas)
            if pattern.n_selected != system.n_selected:
                print(
                    f"pattern has {pattern.n_selected} indices, expected {system.n_selected}",
                    file=sys.stderr,
                )
                return 1
        print(f"{len(lines)} pattern(s) valid for N={system.n_antennas}, "
              f"K={system.n_selected}")
        return 0
    cfg = build_experiment_config("pattern_nmse", _collect_options(args))
    rng = np.random.default_rng(np.random.SeedSequence([cfg.seed]))
    dictionary = None
    if args.kind == "coherence_min_random":
        dictionary = build_polar_dictionary(
            system, n_angles=cfg.n_angles, n_rings=cfg.n_rings,
            beta=cfg.beta, far_ring=cfg.far_ring, min_distance=cfg.grid_min_distance,
        )
    pattern = make_pattern(args.kind, system, dictionary, rng, cfg)
    lines = ["# 0-based antenna indices", pattern.serialize()]
    if args.out:
        Path(args.out).write_text("\n".join(lines) + "\n", encoding="utf-8")
        print(args.out)
    else:
        print("\n".join(lines))
    return 0


def _cmd_dict(args) -> int:
    cfg = build_experiment_config("pattern_nmse", _collect_options(args))
    system = cfg.system(cfg.eta_grid[0])
    dictionary = build_polar_dictionary(
        system, n_angles=cfg.n_angles, n_rings=cfg.n_rings,
        beta=cfg.beta, far_ring=cfg.far_ring, min_distance=cfg.grid_min_distance,
    )
    header = ("column", "angle_index", "ring_index", "sin_angle", "distance_m")
    out = args.out or "dictionary_grid.csv"
    path = write_csv(out, header, dictionary_metadata_rows(dictionary))
    print(path)
    return 0


def _merge_grid_values(argv):
    """Join grid flags with their values so negative entries (e.g. --snr
    -10,0) are not mistaken for option names by argparse."""
    merged = []
    joinable = {"--snr", "--eta", "--alpha"}
    i = 0
    while i < len(argv):
        arg = argv[i]
        if arg in joinable and i + 1 < len(argv):
            merged.append(f"{arg}={argv[i + 1]}")
            i += 2
        else:
            merged.append(arg)
            i += 1
    return merged


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    argv = _merge_grid_values(list(argv))
    parser = argparse.ArgumentParser(
        prog="chanex",
        description="Near-field channel extrapolation experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for kind in EXPERIMENT_KINDS:
        kind_parser = sub.add_parser(kind, help=f"run the {kind} experiment")
        _add_experiment_flags(kind_parser)
        kind_parser.set_defaults(func=lambda args, kind=kind: _run_kind(kind, args))

    patterns_parser = sub.add_parser("patterns", help="emit or validate selection patterns")
    _add_experiment_flags(patterns_parser)
    patterns_parser.add_argument("--kind", choices=PATTERN_KINDS, default="coherence_min_random")
    patterns_parser.add_argument("--validate", help="pattern file to validate")
    patterns_parser.set_defaults(func=_cmd_patterns)

    dict_parser = sub.add_parser("dict", help="emit dictionary grid metadata")
    _add_experiment_flags(dict_parser)
    dict_parser.set_defaults(func=_cmd_dict)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Near-field spatial-domain channel extrapolation for XL-MIMO arrays.

Synthesizes spherical-wave multipath channels, observes them through antenna
selection patterns, and reconstructs the full-array channel with adaptive
on-grid pursuit and off-grid gradient refinement over a polar-domain
dictionary. A seeded Monte-Carlo harness reproduces the accuracy, rate and
complexity experiments at desk scale.
"""

from .channel import (
    ChannelMatrix,
    PathComponent,
    antenna_distances,
    element_offsets,
    far_field_steering,
    gain_correction,
    generate_channel,
    path_gain,
    sample_scenario,
    steering_vector,
    subcarrier_frequencies,
    subcarrier_frequency,
)
from .config import SPEED_OF_LIGHT, SystemConfig
from .dictionary import PolarDictionary, build_polar_dictionary
from .harness import ExperimentConfig, build_experiment_config, run_experiment
from .linesearch import LineSearchResult, armijo_backtrack, strong_wolfe
from .measurement import MeasurementSet, observe, select_rows, sensing_matrix
from .metrics import RateContext, achievable_rate, nmse, to_db, zf_combiner
from .patterns import (
    SelectionPattern,
    coherence_min_random,
    dense_uniform,
    mutual_coherence,
    parse_pattern,
    radiation_profile,
    sparse_comb,
    sparse_random,
)
from .pursuit import CvSplit, OpCounters, SompExtrapolator, cv_split, residual_threshold
from .refine import GridlessExtrapolator, refine_gradients, refine_objective

__version__ = "0.1.0"

__all__ = [
    "ChannelMatrix",
    "CvSplit",
    "ExperimentConfig",
    "GridlessExtrapolator",
    "LineSearchResult",
    "MeasurementSet",
    "OpCounters",
    "PathComponent",
    "PolarDictionary",
    "RateContext",
    "SPEED_OF_LIGHT",
    "SelectionPattern",
    "SompExtrapolator",
    "SystemConfig",
    "achievable_rate",
    "antenna_distances",
    "armijo_backtrack",
    "build_experiment_config",
    "build_polar_dictionary",
    "coherence_min_random",
    "cv_split",
    "dense_uniform",
    "element_offsets",
    "far_field_steering",
    "gain_correction",
    "generate_channel",
    "mutual_coherence",
    "nmse",
    "observe",
    "parse_pattern",
    "path_gain",
    "radiation_profile",
    "refine_gradients",
    "refine_objective",
    "residual_threshold",
    "run_experiment",
    "sample_scenario",
    "select_rows",
    "sensing_matrix",
    "sparse_comb",
    "sparse_random",
    "steering_vector",
    "strong_wolfe",
    "subcarrier_frequencies",
    "subcarrier_frequency",
    "to_db",
    "zf_combiner",
]

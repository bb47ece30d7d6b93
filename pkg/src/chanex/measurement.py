"""Partial observation of the channel through a selection pattern.

The binary measurement matrix induced by a pattern is structurally a row
selector, so observations gather rows instead of materializing it; tests
exercise the explicit-matrix equivalence.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .patterns import SelectionPattern


@dataclass(frozen=True)
class MeasurementSet:
    """Noisy partial observations plus the noiseless copy for oracle tests."""

    observed: np.ndarray
    pattern: SelectionPattern
    noise_power: float
    clean: np.ndarray


def selection_matrix(pattern: SelectionPattern) -> np.ndarray:
    """Explicit binary K x N measurement matrix (test oracle; not hot path)."""
    a = np.zeros((pattern.n_selected, pattern.n_antennas))
    a[np.arange(pattern.n_selected), pattern.indices] = 1.0
    return a


def select_rows(matrix: np.ndarray, pattern: SelectionPattern) -> np.ndarray:
    """Rows of ``matrix`` at the pattern's antenna indices."""
    matrix = np.asarray(matrix)
    if matrix.shape[0] != pattern.n_antennas:
        raise ValueError(
            f"matrix has {matrix.shape[0]} rows but pattern expects {pattern.n_antennas}"
        )
    return matrix[pattern.indices, :].copy()


def complex_noise(shape, noise_power: float, rng: np.random.Generator) -> np.ndarray:
    """Circular complex Gaussian noise with the given per-entry power."""
    scale = np.sqrt(noise_power / 2.0)
    return scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


def observe(
    matrix: np.ndarray,
    pattern: SelectionPattern,
    noise_power: float,
    rng: np.random.Generator,
    pilot: complex = 1.0,
) -> MeasurementSet:
    """Observe the selected rows under additive noise and a known pilot."""
    if noise_power < 0:
        raise ValueError("noise_power must be nonnegative")
    clean = select_rows(matrix, pattern)
    observed = clean * pilot
    if noise_power > 0:
        observed = observed + complex_noise(clean.shape, noise_power, rng)
    return MeasurementSet(
        observed=observed, pattern=pattern, noise_power=noise_power, clean=clean
    )


def sensing_matrix(dictionary, pattern: SelectionPattern) -> np.ndarray:
    """Rows of the dictionary at the selected antennas (K x n_columns)."""
    matrix = dictionary.matrix if hasattr(dictionary, "matrix") else np.asarray(dictionary)
    return select_rows(matrix, pattern)

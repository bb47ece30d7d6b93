"""Input validation helpers shared by the estimators."""

from __future__ import annotations

import numpy as np


def check_observations(Y, n_rows: int) -> np.ndarray:
    """Coerce observations to a complex 2-D array with the expected row count."""
    Y = np.asarray(Y)
    if Y.ndim != 2:
        raise ValueError(f"observations must be 2-D, got shape {Y.shape}")
    if Y.shape[0] != n_rows:
        raise ValueError(f"observations have {Y.shape[0]} rows, expected {n_rows}")
    if Y.shape[1] < 1:
        raise ValueError("observations need at least one column")
    return np.ascontiguousarray(Y, dtype=complex)


def check_matching_shapes(a, b, names=("first", "second")) -> tuple[np.ndarray, np.ndarray]:
    """Coerce two arrays to complex and require identical shapes."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise ValueError(f"{names[0]} shape {a.shape} != {names[1]} shape {b.shape}")
    return a, b

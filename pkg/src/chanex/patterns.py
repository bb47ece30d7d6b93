"""Antenna selection patterns and their quality measures.

Four pattern families are supported: a contiguous block (dense uniform), a
strided comb, a uniform random draw, and a random draw screened by the mutual
coherence of the induced sensing matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import element_offsets, steering_profile
from .config import SystemConfig

DENSE_UNIFORM = "dense_uniform"
SPARSE_COMB = "sparse_comb"
SPARSE_RANDOM = "sparse_random"
COHERENCE_MIN_RANDOM = "coherence_min_random"
PATTERN_KINDS = (DENSE_UNIFORM, SPARSE_COMB, SPARSE_RANDOM, COHERENCE_MIN_RANDOM)


@dataclass(frozen=True)
class SelectionPattern:
    """Ordered set of selected antenna indices (0-based)."""

    indices: np.ndarray
    kind: str
    n_antennas: int

    def __post_init__(self):
        idx = np.asarray(self.indices, dtype=int)
        object.__setattr__(self, "indices", idx)
        if idx.ndim != 1 or idx.size == 0:
            raise ValueError("pattern needs a nonempty 1-D index list")
        if np.any(np.diff(idx) <= 0):
            raise ValueError("pattern indices must be strictly increasing")
        if idx[0] < 0 or idx[-1] >= self.n_antennas:
            raise ValueError(f"pattern indices must lie in [0, {self.n_antennas - 1}]")

    @property
    def n_selected(self) -> int:
        return int(self.indices.size)

    def serialize(self) -> str:
        """Single-line comma-separated index list (0-based)."""
        return ",".join(str(int(i)) for i in self.indices)


def parse_pattern(text: str, n_antennas: int, kind: str = "custom") -> SelectionPattern:
    """Parse a comma-separated index line back into a pattern."""
    indices = np.array([int(tok) for tok in text.strip().split(",") if tok.strip() != ""])
    return SelectionPattern(indices=indices, kind=kind, n_antennas=n_antennas)


def dense_uniform(config: SystemConfig, block: int = 0) -> SelectionPattern:
    """Contiguous block of K adjacent elements starting at block * K."""
    eta = config.compression
    if not 0 <= block <= eta - 1:
        raise ValueError(f"block index {block} outside 0..{eta - 1}")
    k = config.n_selected
    return SelectionPattern(
        indices=np.arange(block * k, (block + 1) * k),
        kind=DENSE_UNIFORM,
        n_antennas=config.n_antennas,
    )


def sparse_comb(config: SystemConfig, offset: int = 0) -> SelectionPattern:
    """One element out of every eta, starting at the given offset."""
    eta = config.compression
    if not 0 <= offset <= eta - 1:
        raise ValueError(f"offset {offset} outside 0..{eta - 1}")
    return SelectionPattern(
        indices=np.arange(offset, config.n_antennas, eta),
        kind=SPARSE_COMB,
        n_antennas=config.n_antennas,
    )


def sparse_random(config: SystemConfig, rng: np.random.Generator) -> SelectionPattern:
    """K distinct indices drawn uniformly without replacement, sorted."""
    k = config.n_selected
    indices = np.sort(rng.choice(config.n_antennas, size=k, replace=False))
    return SelectionPattern(indices=indices, kind=SPARSE_RANDOM, n_antennas=config.n_antennas)


def mutual_coherence(dictionary, pattern: SelectionPattern, block_size: int | None = None) -> float:
    """Largest off-diagonal |inner product| between sensing-matrix columns.

    ``dictionary`` may be a PolarDictionary or a plain (N x P) array. Columns
    are not normalized: with unit-modulus atoms every column norm is sqrt(K),
    so normalization only rescales by the constant K and cannot change which
    pattern minimizes the score. ``block_size`` bounds memory by scoring the
    Gram matrix in column chunks. Dictionaries with fewer than two columns
    score 0 by definition.
    """
    matrix = dictionary.matrix if hasattr(dictionary, "matrix") else np.asarray(dictionary)
    if matrix.shape[0] != pattern.n_antennas:
        raise ValueError("pattern and dictionary disagree on array size")
    if matrix.shape[1] < 2:
        return 0.0
    psi = matrix[pattern.indices, :]
    n_cols = psi.shape[1]
    if block_size is None or block_size >= n_cols:
        gram = np.abs(psi.conj().T @ psi)
        np.fill_diagonal(gram, 0.0)
        return float(gram.max())
    best = 0.0
    psi_h = psi.conj().T
    for start in range(0, n_cols, block_size):
        stop = min(start + block_size, n_cols)
        chunk = np.abs(psi_h[start:stop, :] @ psi)
        chunk[np.arange(stop - start), np.arange(start, stop)] = 0.0
        best = max(best, float(chunk.max()))
    return best


def coherence_min_random(
    config: SystemConfig,
    dictionary,
    n_candidates: int = 10,
    rng: np.random.Generator | None = None,
    candidates=None,
) -> SelectionPattern:
    """Best-of-R random pattern under the mutual coherence score.

    Draws ``n_candidates`` sparse random patterns (or scores an explicitly
    supplied candidate list, e.g. an exhaustive enumeration) and returns the
    first one attaining the minimal coherence.
    """
    if candidates is None:
        if n_candidates < 1:
            raise ValueError("n_candidates must be at least 1")
        if rng is None:
            raise ValueError("rng is required when candidates are drawn")
        candidates = [sparse_random(config, rng) for _ in range(n_candidates)]
    else:
        candidates = list(candidates)
        if not candidates:
            raise ValueError("candidate list must not be empty")
    scores = [mutual_coherence(dictionary, cand) for cand in candidates]
    best = int(np.argmin(scores))
    chosen = candidates[best]
    return SelectionPattern(
        indices=chosen.indices, kind=COHERENCE_MIN_RANDOM, n_antennas=chosen.n_antennas
    )


def radiation_profile(
    pattern: SelectionPattern,
    sin_angle,
    distance_m,
    config: SystemConfig,
    r_min: float = 10.0,
    normalized: bool = True,
):
    """Correlation of the selected-element steering vector with the reference.

    The reference points broadside at distance ``r_min``. Inputs broadcast, so
    either coordinate may be an array for sweep evaluation. The normalized
    variant divides by sqrt(K) so the reference location scores exactly 1.
    """
    sin_angle = np.asarray(sin_angle, dtype=float)
    distance_m = np.asarray(distance_m, dtype=float)
    if np.any(np.abs(sin_angle) > 1.0):
        raise ValueError("sin_angle magnitude must not exceed 1")
    if np.any(distance_m <= 0.0) or r_min <= 0.0:
        raise ValueError("distances must be positive")
    offsets = element_offsets(config.n_antennas)[pattern.indices] * config.spacing_m
    k = config.wavenumber
    reference = steering_profile(0.0, 1.0 / r_min, k, offsets)

    theta, dist = np.broadcast_arrays(sin_angle, distance_m)
    shape = theta.shape
    theta = np.atleast_1d(theta).ravel()
    dist = np.atleast_1d(dist).ravel()
    curvature = (1.0 - theta**2) / dist
    phases = k * (offsets[:, None] * theta[None, :] - 0.5 * offsets[:, None] ** 2 * curvature[None, :])
    probes = np.exp(1j * phases)
    inner = np.abs(probes.conj().T @ reference)
    power = inner / math.sqrt(pattern.n_selected)
    if normalized:
        power = power / math.sqrt(pattern.n_selected)
    return float(power[0]) if shape == () else power.reshape(shape)

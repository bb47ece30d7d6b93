"""On-grid channel extrapolation by simultaneous orthogonal matching pursuit.

One estimator covers the three stopping policies: a residual-power threshold
(adaptive), a fixed atom budget (baseline), and a cross-validated threshold
where support detection correlates only training subcarriers while a held-out
subcarrier set decides when to stop.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator

from .measurement import sensing_matrix
from .validation import check_observations

#: Relative cutoff for the rank-revealing least-squares solves; nearby polar
#: atoms make the selected sub-dictionary ill-conditioned.
LSTSQ_RCOND = 1e-10


def residual_threshold(sigma: float, n_rows: int, n_cols: int) -> float:
    """Residual-power stopping level sigma * sqrt(rows * cols)."""
    if sigma < 0:
        raise ValueError("sigma must be nonnegative")
    if n_rows <= 0 or n_cols <= 0:
        raise ValueError("row and column counts must be positive")
    return sigma * math.sqrt(n_rows * n_cols)


@dataclass(frozen=True)
class CvSplit:
    """Uniformly strided train/validation partition of the subcarriers."""

    ratio: float
    n_train: int
    n_val: int
    stride: int
    train_idx: np.ndarray
    val_idx: np.ndarray


def cv_split(n_cols: int, ratio: float) -> CvSplit:
    """Partition 0..n_cols-1 into strided training and held-out validation sets.

    The training set takes ceil(ratio * n_cols) columns at stride
    floor(n_cols / T) starting from column 0; everything else validates.
    """
    if not 0.0 < ratio < 1.0:
        raise ValueError("ratio must lie strictly between 0 and 1")
    n_train = math.ceil(ratio * n_cols)
    n_val = n_cols - n_train
    if n_train < 1 or n_val < 1:
        raise ValueError(f"degenerate split for n_cols={n_cols}, ratio={ratio}")
    stride = n_cols // n_train
    train_idx = np.arange(n_train) * stride
    mask = np.ones(n_cols, dtype=bool)
    mask[train_idx] = False
    return CvSplit(
        ratio=ratio,
        n_train=n_train,
        n_val=n_val,
        stride=stride,
        train_idx=train_idx,
        val_idx=np.nonzero(mask)[0],
    )


@dataclass
class OpCounters:
    """Deterministic work counters exposed for the complexity experiments."""

    iterations: int = 0
    correlation_ops: int = 0
    ls_solves: int = 0
    line_search_evals: int = 0
    rank_deficient: int = 0
    hit_cap: bool = False
    curvature_fallbacks: int = 0


class SompExtrapolator(BaseEstimator):
    """Greedy on-grid extrapolator over a polar-domain dictionary.

    Parameters:
        dictionary: PolarDictionary whose atoms span the channel.
        pattern: SelectionPattern that produced the observations.
        sigma: noise standard deviation; sets the stopping threshold
            sigma * sqrt(K * M) (or sigma * sqrt(K * V) under CV).
        tol: explicit residual threshold overriding the sigma-derived one
            (full-residual mode only).
        n_paths: fixed atom budget; disables the adaptive stop.
        cv_ratio: fraction of subcarriers used as the correlation training
            set; the complement validates the stopping rule.
        max_paths: cap on adaptive iterations, default K // 2.

    After ``fit``, the estimate lives in ``channel_`` (N x M) with the
    detected support, per-atom grid parameters, gains and work counters in
    ``support_``, ``angles_``, ``distances_``, ``gains_`` and ``counters_``.
    """

    def __init__(
        self,
        dictionary,
        pattern,
        *,
        sigma=None,
        tol=None,
        n_paths=None,
        cv_ratio=None,
        max_paths=None,
    ):
        self.dictionary = dictionary
        self.pattern = pattern
        self.sigma = sigma
        self.tol = tol
        self.n_paths = n_paths
        self.cv_ratio = cv_ratio
        self.max_paths = max_paths

    def _stopping(self, n_rows, n_cols):
        """Resolve (mode, threshold, split, cap) from the parameters."""
        if self.n_paths is not None:
            if self.n_paths < 1:
                raise ValueError("n_paths must be at least 1")
            if self.cv_ratio is not None:
                raise ValueError("fixed atom budget and CV stopping are exclusive")
            return "fixed", None, None, int(self.n_paths)
        cap = self.max_paths if self.max_paths is not None else max(1, n_rows // 2)
        if self.cv_ratio is not None:
            if self.sigma is None:
                raise ValueError("cv_ratio requires sigma for the validation threshold")
            if self.tol is not None:
                raise ValueError("tol is only meaningful for full-residual stopping")
            split = cv_split(n_cols, self.cv_ratio)
            return "cv", residual_threshold(self.sigma, n_rows, split.n_val), split, cap
        if self.tol is not None:
            if self.tol < 0:
                raise ValueError("tol must be nonnegative")
            return "adaptive", float(self.tol), None, cap
        if self.sigma is None:
            raise ValueError("need one of sigma, tol or n_paths")
        return "adaptive", residual_threshold(self.sigma, n_rows, n_cols), None, cap

    def fit(self, Y, y=None):
        Y = check_observations(Y, self.pattern.n_selected)
        n_rows, n_cols = Y.shape
        mode, eps, split, cap = self._stopping(n_rows, n_cols)
        psi = sensing_matrix(self.dictionary, self.pattern)
        corr_cols = split.train_idx if split is not None else slice(None)
        n_corr = split.n_train if split is not None else n_cols

        counters = OpCounters()
        support: list[int] = []
        residual = Y.copy()
        gains = np.zeros((0, n_cols), dtype=complex)
        converged = False

        def stop_metric():
            if mode == "cv":
                return float(np.linalg.norm(residual[:, split.val_idx]))
            return float(np.linalg.norm(residual))

        if mode != "fixed" and stop_metric() <= eps:
            converged = True
        else:
            while True:
                counters.iterations += 1
                corr = psi.conj().T @ residual[:, corr_cols]
                counters.correlation_ops += psi.shape[1] * n_corr
                energy = np.sum(np.abs(corr) ** 2, axis=1)
                energy[support] = -1.0  # an atom never re-enters the support
                support.append(int(np.argmax(energy)))
                sub = psi[:, support]
                gains, _, rank, _ = np.linalg.lstsq(sub, Y, rcond=LSTSQ_RCOND)
                counters.ls_solves += 1
                if rank < len(support):
                    counters.rank_deficient += 1
                residual = Y - sub @ gains
                if mode == "fixed":
                    if counters.iterations >= cap:
                        break
                elif stop_metric() <= eps:
                    converged = True
                    break
                elif counters.iterations >= cap:
                    counters.hit_cap = True
                    break

        self.support_ = list(support)
        self.n_paths_ = len(support)
        self.gains_ = gains
        self.residual_ = residual
        self.angles_ = self.dictionary.col_angle[support].copy()
        self.distances_ = self.dictionary.col_distance[support].copy()
        self.channel_ = self.dictionary.matrix[:, support] @ gains
        self.counters_ = counters
        self.converged_ = converged
        self.cv_split_ = split
        return self

    def transform(self, Y):
        """Extrapolate new observations with the fitted support."""
        if not hasattr(self, "support_"):
            raise RuntimeError("estimator is not fitted")
        Y = check_observations(Y, self.pattern.n_selected)
        if not self.support_:
            return np.zeros((self.dictionary.matrix.shape[0], Y.shape[1]), dtype=complex)
        psi = sensing_matrix(self.dictionary, self.pattern)[:, self.support_]
        gains, _, _, _ = np.linalg.lstsq(psi, Y, rcond=LSTSQ_RCOND)
        return self.dictionary.matrix[:, self.support_] @ gains

    def fit_transform(self, Y, y=None):
        return self.fit(Y).channel_

"""Reconstruction quality scores: NMSE and ergodic ZF uplink rate."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .validation import check_matching_shapes


def nmse(h_true, h_est) -> float:
    """Squared-error power of the estimate relative to the truth."""
    h_true, h_est = check_matching_shapes(h_true, h_est, ("true channel", "estimate"))
    denom = float(np.linalg.norm(h_true) ** 2)
    if denom == 0.0:
        raise ValueError("true channel must be nonzero")
    return float(np.linalg.norm(h_true - h_est) ** 2) / denom


def to_db(value: float) -> float:
    """Power ratio in decibels; -inf for an exact zero."""
    if value < 0:
        raise ValueError("dB conversion needs a nonnegative power ratio")
    if value == 0.0:
        return -math.inf
    return 10.0 * math.log10(value)


def zf_combiner(h_mat: np.ndarray) -> np.ndarray:
    """Zero-forcing receive combiner V = H (H^H H)^(-1) with V^H H = I.

    Raises numpy.linalg.LinAlgError when the channel columns are (near)
    rank-deficient, so callers can record the subcarrier as unavailable.
    """
    h_mat = np.asarray(h_mat, dtype=complex)
    if h_mat.ndim != 2 or h_mat.shape[0] < h_mat.shape[1]:
        raise ValueError("combiner needs an N x U matrix with N >= U")
    gram = h_mat.conj().T @ h_mat
    if np.linalg.cond(gram) > 1e12:
        raise np.linalg.LinAlgError("channel matrix is rank deficient")
    return h_mat @ np.linalg.inv(gram)


@dataclass(frozen=True)
class RateContext:
    """Per-subcarrier true and estimated multi-user channels.

    Arrays are (M, N, U): subcarrier-major stacks of per-user column
    channels. A single transmit power applies to every user.
    """

    true: np.ndarray
    est: np.ndarray
    power: float
    noise_power: float

    def __post_init__(self):
        true = np.asarray(self.true, dtype=complex)
        est = np.asarray(self.est, dtype=complex)
        if true.shape != est.shape or true.ndim != 3:
            raise ValueError("true/est must be matching (M, N, U) stacks")
        if true.shape[2] > true.shape[1]:
            raise ValueError("need at least as many antennas as users")
        object.__setattr__(self, "true", true)
        object.__setattr__(self, "est", est)


def achievable_rate(ctx: RateContext, user: int) -> float:
    """Ergodic ZF uplink rate (bits/s/Hz) of one user, averaged over subcarriers.

    The combiner is built from the estimated channels; the SINR charges the
    estimation-error leakage and the residual multi-user interference against
    the true channels. Subcarriers whose estimate is rank deficient are
    skipped (NaN) and excluded from the average.
    """
    n_sub, _, n_users = ctx.true.shape
    if not 0 <= user < n_users:
        raise ValueError(f"user {user} outside 0..{n_users - 1}")
    rates = np.full(n_sub, np.nan)
    for m in range(n_sub):
        try:
            combiner = zf_combiner(ctx.est[m])
        except np.linalg.LinAlgError:
            continue
        v = combiner[:, user]
        h_est = ctx.est[m][:, user]
        h_true = ctx.true[m][:, user]
        err = h_true - h_est
        signal = ctx.power * abs(np.vdot(v, h_est)) ** 2
        interference = ctx.power * abs(np.vdot(v, err)) ** 2
        for other in range(n_users):
            if other != user:
                interference += ctx.power * abs(np.vdot(v, ctx.true[m][:, other])) ** 2
        denom = interference + ctx.noise_power * float(np.linalg.norm(v) ** 2)
        rates[m] = math.log2(1.0 + signal / denom)
    if np.all(np.isnan(rates)):
        return math.nan
    return float(np.nanmean(rates))

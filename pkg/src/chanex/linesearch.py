"""Scalar line searches used by the off-grid refinement stage.

Both searches operate on the one-dimensional restriction phi(l) of the
objective along a descent direction. The strong-Wolfe search brackets and
zooms; when the curvature condition cannot be met within the evaluation
budget it falls back to the best sufficient-decrease step seen, flagged on
the result.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass
class LineSearchResult:
    step: float
    n_evals: int
    armijo_ok: bool
    curvature_ok: bool


def _quadratic_step(lo, f_lo, g_lo, hi, f_hi):
    """Minimizer of the quadratic through (lo, f_lo, g_lo) and (hi, f_hi)."""
    span = hi - lo
    denom = 2.0 * (f_hi - f_lo - g_lo * span)
    if denom == 0.0:
        return None
    step = lo - g_lo * span**2 / denom
    return step


def strong_wolfe(
    phi,
    dphi,
    f0: float,
    g0: float,
    step0: float = 1.0,
    step_max: float = float("inf"),
    c1: float = 1e-4,
    c2: float = 0.9,
    max_evals: int = 25,
) -> LineSearchResult:
    """Step length satisfying sufficient decrease and the strong curvature bound.

    Args:
        phi: callable l -> objective value along the direction.
        dphi: callable l -> directional derivative along the direction.
        f0: phi(0).
        g0: dphi(0); must be negative (descent direction).
        step0: first trial step.
        step_max: largest admissible step (bound constraints).
        c1, c2: Wolfe constants with 0 < c1 < 1/2 and c1 < c2 < 1.
        max_evals: budget of phi/dphi evaluations.

    Returns:
        LineSearchResult whose step always satisfies the sufficient-decrease
        condition (step 0 in the degenerate no-progress case).
    """
    if g0 >= 0:
        raise ValueError("strong_wolfe requires a descent direction (dphi(0) < 0)")
    if not 0 < c1 < 0.5 or not c1 < c2 < 1:
        raise ValueError("require 0 < c1 < 1/2 and c1 < c2 < 1")
    if step_max <= 0:
        return LineSearchResult(0.0, 0, True, False)

    evals = 0
    best_step, best_f = 0.0, f0

    def armijo(l, f):
        return f <= f0 + c1 * l * g0

    def zoom(lo, f_lo, g_lo, hi, f_hi):
        nonlocal evals, best_step, best_f
        while evals < max_evals:
            trial = _quadratic_step(lo, f_lo, g_lo, hi, f_hi)
            width = abs(hi - lo)
            inner_lo, inner_hi = min(lo, hi), max(lo, hi)
            margin = 0.1 * width
            if trial is None or not inner_lo + margin <= trial <= inner_hi - margin:
                trial = 0.5 * (lo + hi)
            f = phi(trial)
            evals += 1
            if not armijo(trial, f) or f >= f_lo:
                hi, f_hi = trial, f
            else:
                if f < best_f:
                    best_step, best_f = trial, f
                if evals >= max_evals:
                    break
                g = dphi(trial)
                evals += 1
                if abs(g) <= -c2 * g0:
                    return LineSearchResult(trial, evals, True, True)
                if g * (hi - lo) >= 0:
                    hi, f_hi = lo, f_lo
                lo, f_lo, g_lo = trial, f, g
            if width <= 1e-16 * max(1.0, abs(hi)):
                break
        return LineSearchResult(best_step, evals, best_step > 0.0, False)

    prev_l, prev_f, prev_g = 0.0, f0, g0
    l = min(step0, step_max)
    first = True
    while evals < max_evals:
        f = phi(l)
        evals += 1
        if not armijo(l, f) or (not first and f >= prev_f):
            return zoom(prev_l, prev_f, prev_g, l, f)
        if f < best_f:
            best_step, best_f = l, f
        if evals >= max_evals:
            break
        g = dphi(l)
        evals += 1
        if abs(g) <= -c2 * g0:
            return LineSearchResult(l, evals, True, True)
        if g >= 0:
            return zoom(l, f, g, prev_l, prev_f)
        if l >= step_max:
            break
        prev_l, prev_f, prev_g = l, f, g
        l = min(2.0 * l, step_max)
        first = False
    return LineSearchResult(best_step, evals, best_step > 0.0, False)


def armijo_backtrack(
    phi,
    f0: float,
    g0: float,
    step0: float = 1.0,
    shrink: float = 0.5,
    c1: float = 1e-4,
    max_evals: int = 25,
) -> LineSearchResult:
    """Backtracking search returning the first step with sufficient decrease."""
    if g0 >= 0:
        raise ValueError("armijo_backtrack requires a descent direction (dphi(0) < 0)")
    if not 0 < c1 < 0.5:
        raise ValueError("require 0 < c1 < 1/2")
    l = step0
    for i in range(1, max_evals + 1):
        f = phi(l)
        if f <= f0 + c1 * l * g0:
            return LineSearchResult(l, i, True, False)
        l *= shrink
    return LineSearchResult(0.0, max_evals, True, False)

"""Scalar line searches on analytic objectives."""

import numpy as np
import pytest

from chanex import armijo_backtrack, strong_wolfe


def quadratic_phi(l):
    return (1.0 - 2.0 * l) ** 2


def quadratic_dphi(l):
    return -4.0 * (1.0 - 2.0 * l)


class TestStrongWolfe:
    def test_quadratic_finds_exact_minimizer(self):
        result = strong_wolfe(quadratic_phi, quadratic_dphi, f0=1.0, g0=-4.0, step0=1.0)
        assert result.step == pytest.approx(0.5)
        assert result.armijo_ok and result.curvature_ok

    def test_minimizer_satisfies_both_conditions(self):
        c1, c2 = 1e-4, 0.9
        l = 0.5
        assert quadratic_phi(l) <= quadratic_phi(0) + c1 * l * quadratic_dphi(0)
        assert abs(quadratic_dphi(l)) <= c2 * abs(quadratic_dphi(0))

    def test_returned_step_satisfies_sufficient_decrease(self):
        rng = np.random.default_rng(0)
        for _ in range(50):
            a = rng.uniform(0.5, 5.0)
            b = rng.uniform(0.5, 4.0)

            def phi(l):
                return a * (l - b) ** 2

            def dphi(l):
                return 2 * a * (l - b)

            f0, g0 = phi(0.0), dphi(0.0)
            result = strong_wolfe(phi, dphi, f0=f0, g0=g0, step0=1.0)
            assert result.step >= 0
            assert phi(result.step) <= f0 + 1e-4 * result.step * g0

    def test_respects_step_bound(self):
        result = strong_wolfe(quadratic_phi, quadratic_dphi, f0=1.0, g0=-4.0,
                              step0=1.0, step_max=0.1)
        assert 0 < result.step <= 0.1

    def test_expands_beyond_initial_step(self):
        def phi(l):
            return (l - 40.0) ** 2

        def dphi(l):
            return 2 * (l - 40.0)

        result = strong_wolfe(phi, dphi, f0=1600.0, g0=-80.0, step0=1.0, max_evals=60)
        assert result.step > 1.0
        assert phi(result.step) < 1600.0

    def test_curvature_fallback_is_flagged(self):
        # |x| has no curvature-satisfying neighborhood around its kink.
        def phi(l):
            return abs(1.0 - l) * 5.0

        def dphi(l):
            return -5.0 if l < 1.0 else 5.0

        result = strong_wolfe(phi, dphi, f0=5.0, g0=-5.0, step0=0.75, max_evals=12)
        assert result.armijo_ok
        assert phi(result.step) <= 5.0 + 1e-4 * result.step * -5.0

    def test_rejects_non_descent(self):
        with pytest.raises(ValueError):
            strong_wolfe(quadratic_phi, quadratic_dphi, f0=1.0, g0=0.5)


class TestArmijo:
    def test_first_accepted_step(self):
        result = armijo_backtrack(quadratic_phi, f0=1.0, g0=-4.0, step0=1.0)
        # phi(1) = 1 fails, phi(0.5) = 0 passes.
        assert result.step == pytest.approx(0.5)
        assert result.n_evals == 2

    def test_postcondition(self):
        rng = np.random.default_rng(1)
        for _ in range(50):
            a = rng.uniform(0.5, 5.0)
            b = rng.uniform(0.1, 3.0)

            def phi(l):
                return a * (l - b) ** 2

            f0 = phi(0.0)
            g0 = -2 * a * b
            result = armijo_backtrack(phi, f0=f0, g0=g0, step0=2.0)
            assert phi(result.step) <= f0 + 1e-4 * result.step * g0

    def test_rejects_non_descent(self):
        with pytest.raises(ValueError):
            armijo_backtrack(quadratic_phi, f0=1.0, g0=1.0)

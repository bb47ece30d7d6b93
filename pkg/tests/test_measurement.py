"""Row selection, noisy observation, and the sensing matrix."""

import numpy as np
import pytest

from chanex import (
    SystemConfig,
    dense_uniform,
    observe,
    select_rows,
    sensing_matrix,
    sparse_random,
)
from chanex.measurement import complex_noise, selection_matrix

from conftest import rng_of


class TestSelectRows:
    def test_identity_pattern(self):
        cfg = SystemConfig(n_antennas=8, compression=1)
        H = rng_of(0).standard_normal((8, 4)) + 1j * rng_of(1).standard_normal((8, 4))
        assert np.array_equal(select_rows(H, dense_uniform(cfg)), H)

    def test_single_row(self):
        cfg = SystemConfig(n_antennas=8, compression=8)
        H = rng_of(2).standard_normal((8, 4))
        picked = select_rows(H, dense_uniform(cfg, 0))
        assert picked.shape == (1, 4)
        assert np.array_equal(picked[0], H[0])

    def test_matches_explicit_binary_matrix(self):
        cfg = SystemConfig(n_antennas=8, compression=2)
        pattern = sparse_random(cfg, rng_of(3))
        H = rng_of(4).standard_normal((8, 5)) + 1j * rng_of(5).standard_normal((8, 5))
        explicit = selection_matrix(pattern) @ H
        assert np.allclose(select_rows(H, pattern), explicit)

    def test_shape_mismatch(self):
        cfg = SystemConfig(n_antennas=8, compression=2)
        with pytest.raises(ValueError):
            select_rows(np.zeros((9, 2)), dense_uniform(cfg))


class TestObserve:
    def test_noiseless(self):
        cfg = SystemConfig(n_antennas=16, compression=4)
        H = rng_of(6).standard_normal((16, 6)) + 1j * rng_of(7).standard_normal((16, 6))
        pattern = sparse_random(cfg, rng_of(8))
        ms = observe(H, pattern, 0.0, rng_of(9))
        assert np.array_equal(ms.observed, ms.clean)
        assert np.array_equal(ms.clean, select_rows(H, pattern))

    def test_noise_power_monte_carlo(self):
        cfg = SystemConfig(n_antennas=128, compression=2)
        pattern = dense_uniform(cfg)
        H = np.zeros((128, 160), dtype=complex)
        ms = observe(H, pattern, 1.0, rng_of(10))
        power = np.mean(np.abs(ms.observed) ** 2)
        assert power == pytest.approx(1.0, rel=0.05)

    def test_expected_noise_energy(self):
        """E ||N||_F^2 = sigma^2 K M within 3 standard errors over many draws."""
        rng = rng_of(11)
        sigma2, k, m, trials = 0.5, 8, 16, 1000
        energies = [np.linalg.norm(complex_noise((k, m), sigma2, rng)) ** 2
                    for _ in range(trials)]
        expected = sigma2 * k * m
        stderr = np.std(energies) / np.sqrt(trials)
        assert abs(np.mean(energies) - expected) < 3 * stderr

    def test_seed_reproducible(self):
        cfg = SystemConfig(n_antennas=16, compression=4)
        H = rng_of(12).standard_normal((16, 6)) + 0j
        pattern = dense_uniform(cfg)
        a = observe(H, pattern, 0.3, rng_of(13)).observed
        b = observe(H, pattern, 0.3, rng_of(13)).observed
        assert np.array_equal(a, b)

    def test_linear_in_channel_for_fixed_noise(self):
        cfg = SystemConfig(n_antennas=16, compression=4)
        pattern = dense_uniform(cfg)
        H = rng_of(14).standard_normal((16, 6)) + 1j * rng_of(15).standard_normal((16, 6))
        noise = complex_noise((4, 6), 0.2, rng_of(16))
        y1 = select_rows(H, pattern) + noise
        y2 = select_rows(2.0 * H, pattern) + noise
        assert np.allclose(y2 - noise, 2.0 * (y1 - noise))

    def test_negative_noise_power(self):
        cfg = SystemConfig(n_antennas=16, compression=4)
        with pytest.raises(ValueError):
            observe(np.zeros((16, 2)), dense_uniform(cfg), -0.1, rng_of(17))


class TestSensingMatrix:
    def test_identity_pattern_returns_dictionary(self, small_config, small_dictionary):
        full = SystemConfig(n_antennas=small_config.n_antennas, compression=1)
        psi = sensing_matrix(small_dictionary, dense_uniform(full))
        assert np.array_equal(psi, small_dictionary.matrix)

    def test_column_norms(self, small_config, small_dictionary):
        pattern = sparse_random(small_config, rng_of(18))
        psi = sensing_matrix(small_dictionary, pattern)
        norms = np.linalg.norm(psi, axis=0)
        assert np.allclose(norms, np.sqrt(pattern.n_selected))

    def test_matches_explicit_product(self, small_config, small_dictionary):
        pattern = sparse_random(small_config, rng_of(19))
        explicit = selection_matrix(pattern) @ small_dictionary.matrix
        assert np.allclose(sensing_matrix(small_dictionary, pattern), explicit)

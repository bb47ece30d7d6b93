"""Polar dictionary grid rules, atom identity, and the polar-domain map."""

import math

import numpy as np
import pytest

from chanex import SystemConfig, build_polar_dictionary, steering_vector
from chanex.channel import far_field_steering

from conftest import rng_of


class TestGridRules:
    def test_angle_grid_formula(self, paper_config):
        d = build_polar_dictionary(paper_config)
        n = d.n_angles
        assert d.angle_grid[0] == pytest.approx(-1.0)
        assert d.angle_grid[n // 2] == pytest.approx(0.0)
        assert np.all(np.diff(d.angle_grid) > 0)
        # 1-based rule sin = (2 (n_a - 1) - N_a) / N_a.
        for na in (1, 2, n // 2 + 1, n):
            assert d.angle_grid[na - 1] == pytest.approx((2 * (na - 1) - n) / n)

    def test_angle_grid_symmetry(self, paper_config):
        d = build_polar_dictionary(paper_config)
        n = d.n_angles
        for na in range(2, n + 1):  # theta_{n_a} = -theta_{N_a + 2 - n_a}
            assert d.angle_grid[na - 1] == pytest.approx(-d.angle_grid[n + 2 - na - 1])

    def test_broadside_first_ring_distance(self, paper_config):
        d = build_polar_dictionary(paper_config)
        broadside = d.n_angles // 2
        assert d.col_distance[d.column_index(broadside, 1)] == pytest.approx(9.75, abs=0.01)

    def test_ring_distances_shrink_as_inverse_index(self, paper_config):
        d = build_polar_dictionary(paper_config, n_rings=4)
        for na in (3, 50, 100):
            r1 = d.col_distance[d.column_index(na, 1)]
            r2 = d.col_distance[d.column_index(na, 2)]
            assert r2 == r1 / 2.0

    def test_column_count(self, paper_config):
        d = build_polar_dictionary(paper_config, n_angles=64, n_rings=3)
        assert d.n_columns == 64 * 4
        bare = build_polar_dictionary(paper_config, n_angles=64, n_rings=3, far_ring=False)
        assert bare.n_columns == 64 * 3

    def test_invalid_sizes(self, paper_config):
        with pytest.raises(ValueError):
            build_polar_dictionary(paper_config, n_angles=15)
        with pytest.raises(ValueError):
            build_polar_dictionary(paper_config, n_angles=0)
        with pytest.raises(ValueError):
            build_polar_dictionary(paper_config, n_rings=-1)


class TestAtoms:
    def test_unit_modulus(self, small_dictionary):
        assert np.max(np.abs(np.abs(small_dictionary.matrix) - 1.0)) <= 1e-12

    def test_column_index_round_trip(self, small_dictionary):
        d = small_dictionary
        for p in range(d.n_columns):
            na, nd = d.column_location(p)
            assert d.column_index(na, nd) == p
            assert np.array_equal(d.atom(na, nd), d.matrix[:, p])

    def test_far_ring_broadside_is_all_ones(self, paper_config):
        d = build_polar_dictionary(paper_config)
        atom = d.atom(d.n_angles // 2, 0)
        assert np.allclose(atom, 1.0)

    def test_atom_equals_steering_recomputation(self, paper_config):
        d = build_polar_dictionary(paper_config, n_angles=32, n_rings=2)
        rng = rng_of(21)
        for _ in range(10):
            na = int(rng.integers(0, 32))
            nd = int(rng.integers(0, 3))
            atom = d.atom(na, nd)
            sin_a = d.angle_grid[na]
            if nd == 0:
                oracle = far_field_steering(sin_a, paper_config.carrier_hz, paper_config)
            else:
                r = d.col_distance[d.column_index(na, nd)]
                if r == 0.0:
                    continue  # degenerate endfire node, no steering equivalent
                oracle = steering_vector(math.asin(sin_a), r, paper_config.carrier_hz,
                                         paper_config)
            assert np.array_equal(atom, oracle)

    def test_out_of_range_indices(self, small_dictionary):
        with pytest.raises(IndexError):
            small_dictionary.atom(small_dictionary.n_angles, 0)
        with pytest.raises(IndexError):
            small_dictionary.atom(0, small_dictionary.n_rings + 1)
        with pytest.raises(IndexError):
            small_dictionary.column_location(small_dictionary.n_columns)

    def test_degenerate_endfire_columns_distinct_across_rings(self, paper_config):
        """sin = -1 collapses the ring radii to zero; the uniform-curvature
        extension must still keep those atoms distinct so coherence scoring
        never sees exact duplicates."""
        d = build_polar_dictionary(paper_config, n_angles=64, n_rings=2)
        far = d.atom(0, 0)
        ring1 = d.atom(0, 1)
        ring2 = d.atom(0, 2)
        assert not np.allclose(far, ring1)
        assert not np.allclose(ring1, ring2)


class TestPolarToSpatial:
    def test_zero_maps_to_zero(self, small_dictionary):
        out = small_dictionary.polar_to_spatial(
            np.zeros((small_dictionary.n_columns, 5), dtype=complex))
        assert np.all(out == 0)

    def test_one_hot_reproduces_atom(self, small_dictionary):
        d = small_dictionary
        coeff = np.zeros((d.n_columns, 3), dtype=complex)
        coeff[7, 1] = 2.0 - 1.0j
        out = d.polar_to_spatial(coeff)
        assert np.array_equal(out[:, 1], (2.0 - 1.0j) * d.matrix[:, 7])
        assert np.all(out[:, 0] == 0)

    def test_matches_triple_loop_oracle(self, small_dictionary):
        d = small_dictionary
        rng = rng_of(22)
        coeff = rng.standard_normal((d.n_columns, 4)) + 1j * rng.standard_normal((d.n_columns, 4))
        fast = d.polar_to_spatial(coeff)
        slow = np.zeros_like(fast)
        for i in range(d.matrix.shape[0]):
            for j in range(4):
                acc = 0.0 + 0.0j
                for p in range(d.n_columns):
                    acc += d.matrix[i, p] * coeff[p, j]
                slow[i, j] = acc
        assert np.max(np.abs(fast - slow)) < 1e-10

    def test_dimension_mismatch(self, small_dictionary):
        with pytest.raises(ValueError):
            small_dictionary.polar_to_spatial(np.zeros((3, 3)))

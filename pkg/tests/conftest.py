import numpy as np
import pytest

from chanex import SystemConfig, build_polar_dictionary


@pytest.fixture(scope="session")
def paper_config():
    """Full-scale configuration used by the publication-style experiments."""
    return SystemConfig()


@pytest.fixture(scope="session")
def small_config():
    """Desk-scale configuration for exhaustive oracles."""
    return SystemConfig(n_antennas=16, n_subcarriers=8, compression=4)


@pytest.fixture(scope="session")
def small_dictionary(small_config):
    return build_polar_dictionary(small_config, n_angles=16, n_rings=1)


def rng_of(*key):
    return np.random.default_rng(np.random.SeedSequence(list(key)))

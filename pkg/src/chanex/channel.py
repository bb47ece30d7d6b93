"""Spherical-wave multipath channel synthesis for a uniform linear array.

Ground-truth channels are superpositions of line-of-sight, reflected and
scattering components, each contributing a per-subcarrier complex gain times
a distance-corrected near-field steering vector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import SPEED_OF_LIGHT, SystemConfig

LOS = "los"
REFLECTED = "reflected"
SCATTERING = "scattering"
PATH_KINDS = (LOS, REFLECTED, SCATTERING)


@dataclass(frozen=True)
class PathComponent:
    """One propagation path of a multipath scenario.

    Attributes:
        kind: one of ``"los"``, ``"reflected"``, ``"scattering"``.
        angle_rad: physical arrival angle, with sin(angle) in [-1, 1].
        distance_m: effective distance driving the wavefront curvature; the
            user distance for LoS, the summed segment lengths for a reflected
            path and the scatterer-to-array distance for a scattering path.
        extra_distance_m: pre-array segment (user-to-surface or
            user-to-scatterer); absent for LoS.
        reflectivity: complex loss factor with magnitude in (0, 1); absent
            for LoS.
    """

    kind: str
    angle_rad: float
    distance_m: float
    extra_distance_m: float | None = None
    reflectivity: complex | None = None

    def __post_init__(self):
        if self.kind not in PATH_KINDS:
            raise ValueError(f"unknown path kind {self.kind!r}")
        if self.distance_m <= 0:
            raise ValueError("distance_m must be positive")
        if abs(math.sin(self.angle_rad)) > 1.0:
            raise ValueError("angle must have sine magnitude at most 1")
        if self.kind == LOS:
            if self.reflectivity is not None or self.extra_distance_m is not None:
                raise ValueError("LoS paths carry no reflectivity or extra segment")
        else:
            if self.reflectivity is None:
                raise ValueError(f"{self.kind} paths require a reflectivity")
            if not 0.0 < abs(self.reflectivity) < 1.0:
                raise ValueError("reflectivity magnitude must lie in (0, 1)")
            if self.kind == SCATTERING and (
                self.extra_distance_m is None or self.extra_distance_m <= 0
            ):
                raise ValueError("scattering paths require a positive extra segment")


@dataclass(frozen=True)
class ChannelMatrix:
    """Ground-truth channel with the paths it was generated from."""

    entries: np.ndarray
    paths: tuple[PathComponent, ...]

    @property
    def shape(self):
        return self.entries.shape


def element_offsets(n_antennas: int) -> np.ndarray:
    """Signed element offsets delta_i = i - (N - 1) / 2 for 0-based index i."""
    return np.arange(n_antennas) - (n_antennas - 1) / 2.0


def subcarrier_frequency(config: SystemConfig, m: int) -> float:
    """Frequency of the m-th subcarrier (1-based), centered on the carrier."""
    if not 1 <= m <= config.n_subcarriers:
        raise ValueError(f"subcarrier index {m} outside 1..{config.n_subcarriers}")
    step = config.bandwidth_hz / config.n_subcarriers
    return config.carrier_hz + step * (m - 1 - (config.n_subcarriers - 1) / 2.0)


def subcarrier_frequencies(config: SystemConfig) -> np.ndarray:
    """All M subcarrier frequencies in ascending order."""
    m = np.arange(1, config.n_subcarriers + 1)
    step = config.bandwidth_hz / config.n_subcarriers
    return config.carrier_hz + step * (m - 1 - (config.n_subcarriers - 1) / 2.0)


def antenna_distances(angle_rad: float, r: float, config: SystemConfig) -> np.ndarray:
    """Per-element source distances under a second-order Taylor expansion.

    Returns r - delta*d*sin(angle) + (delta*d)^2 (1 - sin^2) / (2 r) for every
    element of the array.
    """
    if r <= 0:
        raise ValueError("distance must be positive")
    sin_a = math.sin(angle_rad)
    offsets = element_offsets(config.n_antennas) * config.spacing_m
    return r - offsets * sin_a + offsets**2 * (1.0 - sin_a**2) / (2.0 * r)


def exact_antenna_distances(angle_rad: float, r: float, config: SystemConfig) -> np.ndarray:
    """Exact Euclidean per-element distances; oracle for the Taylor form."""
    if r <= 0:
        raise ValueError("distance must be positive")
    sin_a = math.sin(angle_rad)
    offsets = element_offsets(config.n_antennas) * config.spacing_m
    return np.sqrt(r**2 + offsets**2 - 2.0 * r * offsets * sin_a)


def steering_profile(sin_angle, curvature, wavenumber, offsets_m):
    """Unit-modulus steering entries from sine-space geometry.

    Each entry is exp(j k (o * sin_angle - o^2 * curvature / 2)) for element
    offset o (in meters). ``curvature`` equals (1 - sin^2) / r for a spherical
    wavefront and 0 in the planar-wave limit; parameterizing it directly keeps
    the planar limit and degenerate grid points on one code path.
    """
    phase = wavenumber * (offsets_m * sin_angle - 0.5 * offsets_m**2 * curvature)
    return np.exp(1j * phase)


def steering_vector(angle_rad: float, r: float, f: float, config: SystemConfig) -> np.ndarray:
    """Near-field array response exp(-j k (r_n - r)) at frequency f.

    The excess distance r_n - r is evaluated in closed form rather than by
    subtracting the two lengths, which would cancel catastrophically when r
    dwarfs the aperture.
    """
    if r <= 0:
        raise ValueError("distance must be positive")
    if f <= 0:
        raise ValueError("frequency must be positive")
    k = 2.0 * math.pi * f / SPEED_OF_LIGHT
    sin_a = math.sin(angle_rad)
    offsets = element_offsets(config.n_antennas) * config.spacing_m
    return steering_profile(sin_a, (1.0 - sin_a**2) / r, k, offsets)


def far_field_steering(sin_angle: float, f: float, config: SystemConfig) -> np.ndarray:
    """Planar-wave limit of the steering vector, exp(j k delta d sin)."""
    if f <= 0:
        raise ValueError("frequency must be positive")
    k = 2.0 * math.pi * f / SPEED_OF_LIGHT
    offsets = element_offsets(config.n_antennas) * config.spacing_m
    return steering_profile(sin_angle, 0.0, k, offsets)


def gain_correction(angle_rad: float, r: float, config: SystemConfig) -> np.ndarray:
    """Per-element amplitude correction r / r_n, strictly positive."""
    return r / antenna_distances(angle_rad, r, config)


def path_gain(path: PathComponent, f: float) -> complex:
    """Complex gain of one path at frequency f.

    LoS paths follow the free-space law, reflected paths add a loss factor
    over the summed segment length, and scattering paths compound two
    free-space legs through the scatterer reflectivity.
    """
    if f <= 0:
        raise ValueError("frequency must be positive")
    lam = SPEED_OF_LIGHT / f
    k = 2.0 * math.pi / lam
    if path.kind == LOS:
        return lam * np.exp(-1j * k * path.distance_m) / (4.0 * math.pi * path.distance_m)
    if path.kind == REFLECTED:
        total = path.distance_m
        return path.reflectivity * lam * np.exp(-1j * k * total) / (4.0 * math.pi * total)
    total = path.distance_m + path.extra_distance_m
    return (
        path.reflectivity
        * lam**2
        * np.exp(-1j * k * total)
        / ((4.0 * math.pi) ** 2 * path.extra_distance_m * path.distance_m)
    )


def generate_channel(paths, config: SystemConfig) -> ChannelMatrix:
    """Synthesize the N x M channel from a list of path components.

    Column m is the superposition over paths of the per-subcarrier gain times
    the amplitude-corrected steering vector at the exact subcarrier frequency.
    """
    paths = tuple(paths)
    if not paths:
        raise ValueError("path list must not be empty")
    freqs = subcarrier_frequencies(config)
    entries = np.zeros((config.n_antennas, config.n_subcarriers), dtype=complex)
    offsets = element_offsets(config.n_antennas) * config.spacing_m
    for path in paths:
        sin_a = math.sin(path.angle_rad)
        extra = -offsets * sin_a + offsets**2 * (1.0 - sin_a**2) / (2.0 * path.distance_m)
        correction = gain_correction(path.angle_rad, path.distance_m, config)
        gains = np.array([path_gain(path, f) for f in freqs])
        wavenumbers = 2.0 * math.pi * freqs / SPEED_OF_LIGHT
        steering = np.exp(-1j * np.outer(extra, wavenumbers))
        entries += correction[:, None] * steering * gains[None, :]
    return ChannelMatrix(entries=entries, paths=paths)


def sample_scenario(
    rng: np.random.Generator,
    n_paths: int,
    config: SystemConfig,
    distance_range=(10.0, 80.0),
    reflected_mag=(0.5, 1.0),
    scattering_mag=(0.1, 0.5),
):
    """Draw a random multipath scenario: one LoS plus n_paths - 1 NLoS paths.

    Distances are i.i.d. uniform over ``distance_range``, arrival angles are
    uniform in the sine domain, and reflectivities get a uniform magnitude
    from the per-kind interval with a uniform phase. The second path (when
    present) is the reflected one; any further paths are scatterers.
    """
    if n_paths < 1:
        raise ValueError("n_paths must be at least 1")
    lo, hi = distance_range

    def draw_angle():
        return math.asin(rng.uniform(-1.0, 1.0))

    def draw_gamma(mag_range):
        mag = rng.uniform(*mag_range)
        phase = rng.uniform(0.0, 2.0 * math.pi)
        return mag * np.exp(1j * phase)

    paths = [PathComponent(kind=LOS, angle_rad=draw_angle(), distance_m=rng.uniform(lo, hi))]
    if n_paths >= 2:
        seg1 = rng.uniform(lo, hi)
        seg2 = rng.uniform(lo, hi)
        paths.append(
            PathComponent(
                kind=REFLECTED,
                angle_rad=draw_angle(),
                distance_m=seg1 + seg2,
                extra_distance_m=seg1,
                reflectivity=draw_gamma(reflected_mag),
            )
        )
    for _ in range(n_paths - 2):
        paths.append(
            PathComponent(
                kind=SCATTERING,
                angle_rad=draw_angle(),
                distance_m=rng.uniform(lo, hi),
                extra_distance_m=rng.uniform(lo, hi),
                reflectivity=draw_gamma(scattering_mag),
            )
        )
    return paths

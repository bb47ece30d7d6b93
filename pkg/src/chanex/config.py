"""System-level constants for the simulated near-field uplink."""

from __future__ import annotations

import math
from dataclasses import dataclass

#: Propagation speed (m/s). The usual RF convention of 3e8 keeps derived
#: quantities (wavelength, grid distances) aligned with the values normally
#: quoted for 28 GHz systems.
SPEED_OF_LIGHT = 3.0e8


@dataclass(frozen=True)
class SystemConfig:
    """Physical and algorithmic constants shared across the simulator.

    Attributes:
        n_antennas: ULA element count N at the receiver.
        n_subcarriers: OFDM subcarrier count M.
        n_users: number of served single-antenna users U.
        carrier_hz: center frequency f_c.
        bandwidth_hz: total bandwidth B (must stay below f_c).
        compression: antenna compression rate eta; N must divide evenly so
            that K = N / eta elements are observed.
        spacing_m: element spacing d, defaulting to half a carrier wavelength.
        noise_power: per-antenna noise power sigma^2.
        pilot_power: pilot/transmit power p_t.
    """

    n_antennas: int = 128
    n_subcarriers: int = 128
    n_users: int = 3
    carrier_hz: float = 28e9
    bandwidth_hz: float = 28e6
    compression: int = 8
    spacing_m: float | None = None
    noise_power: float = 1.0
    pilot_power: float = 1.0

    def __post_init__(self):
        if self.n_antennas < 1:
            raise ValueError("n_antennas must be at least 1")
        if self.n_subcarriers < 1:
            raise ValueError("n_subcarriers must be at least 1")
        if self.n_users < 1:
            raise ValueError("n_users must be at least 1")
        if self.carrier_hz <= 0:
            raise ValueError("carrier_hz must be positive")
        if not 0 < self.bandwidth_hz < self.carrier_hz:
            raise ValueError("bandwidth_hz must lie in (0, carrier_hz)")
        if self.compression < 1 or self.n_antennas % self.compression:
            raise ValueError("compression must divide n_antennas exactly")
        if self.noise_power < 0:
            raise ValueError("noise_power must be nonnegative")
        if self.pilot_power <= 0:
            raise ValueError("pilot_power must be positive")
        if self.spacing_m is None:
            object.__setattr__(self, "spacing_m", self.wavelength_m / 2.0)
        elif self.spacing_m <= 0:
            raise ValueError("spacing_m must be positive")

    @property
    def wavelength_m(self) -> float:
        """Carrier wavelength lambda_c = c / f_c."""
        return SPEED_OF_LIGHT / self.carrier_hz

    @property
    def wavenumber(self) -> float:
        """Carrier wavenumber 2 pi f_c / c."""
        return 2.0 * math.pi * self.carrier_hz / SPEED_OF_LIGHT

    @property
    def aperture_m(self) -> float:
        """Array aperture D, using the N*d large-array approximation."""
        return self.n_antennas * self.spacing_m

    @property
    def n_selected(self) -> int:
        """Number of observed elements K = N / eta."""
        return self.n_antennas // self.compression

    @property
    def rayleigh_m(self) -> float:
        """Near/far-field boundary 2 D^2 / lambda_c."""
        return 2.0 * self.aperture_m**2 / self.wavelength_m

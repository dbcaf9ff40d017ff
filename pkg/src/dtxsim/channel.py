"""User geometry, pathloss, shadowing and thermal noise.

Produces :class:`ChannelRealization` records (linear power gains of the two
links, noise power, bandwidth) for the Monte-Carlo engine. All stochastic
functions take an explicit ``numpy.random.Generator`` so that a drop is fully
determined by its seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

BOLTZMANN_J_PER_K = 1.380649e-23

# 2 GHz macro pathloss: PL(dB) = 128.1 + 37.6 * log10(d / 1 km),
# plus lognormal shadowing. Coefficients are overridable for
# sensitivity studies against other UMa NLOS variants.
PATHLOSS_INTERCEPT_DB = 128.1
PATHLOSS_SLOPE_DB_PER_DECADE = 37.6


@dataclass(frozen=True)
class GeometryParams:
    """Cell geometry for uniform-on-disk user drops."""

    cell_radius_m: float
    min_distance_m: float
    carrier_freq_hz: float = 2e9

    def __post_init__(self) -> None:
        if not 0.0 < self.min_distance_m < self.cell_radius_m:
            raise ValueError(
                "require 0 < min_distance_m < cell_radius_m, got "
                f"min={self.min_distance_m}, radius={self.cell_radius_m}"
            )
        if self.carrier_freq_hz <= 0.0:
            raise ValueError(f"carrier_freq_hz must be > 0, got {self.carrier_freq_hz}")


@dataclass(frozen=True)
class ShadowingParams:
    """Lognormal shadowing, independent per link per drop."""

    std_dev_db: float

    def __post_init__(self) -> None:
        if self.std_dev_db < 0.0:
            raise ValueError(f"std_dev_db must be >= 0, got {self.std_dev_db}")


@dataclass(frozen=True)
class ChannelRealization:
    """One drop: linear power gains of both links, noise power, bandwidth."""

    g1: float
    g2: float
    noise_w: float
    bandwidth_hz: float

    def __post_init__(self) -> None:
        if self.g1 <= 0.0 or self.g2 <= 0.0:
            raise ValueError(f"gains must be > 0, got g1={self.g1}, g2={self.g2}")
        if self.noise_w <= 0.0:
            raise ValueError(f"noise_w must be > 0, got {self.noise_w}")
        if self.bandwidth_hz <= 0.0:
            raise ValueError(f"bandwidth_hz must be > 0, got {self.bandwidth_hz}")


def drop_user(geometry: GeometryParams, rng: np.random.Generator) -> float:
    """Draw a radial user distance, area-uniform on the annulus.

    Density is proportional to r on [min_distance_m, cell_radius_m], i.e.
    CDF F(r) = (r^2 - rmin^2) / (R^2 - rmin^2).
    """
    rmin2 = geometry.min_distance_m**2
    r2 = geometry.cell_radius_m**2
    u = rng.random()
    return math.sqrt(rmin2 + u * (r2 - rmin2))


def pathloss_db(
    distance_m: float,
    geometry: GeometryParams,
    *,
    intercept_db: float = PATHLOSS_INTERCEPT_DB,
    slope_db_per_decade: float = PATHLOSS_SLOPE_DB_PER_DECADE,
) -> float:
    """Median pathloss in dB at ``distance_m``; strictly increasing in distance."""
    if distance_m < geometry.min_distance_m:
        raise ValueError(
            f"distance {distance_m} m below minimum {geometry.min_distance_m} m"
        )
    return intercept_db + slope_db_per_decade * math.log10(distance_m / 1000.0)


def apply_shadowing(
    pl_db: float, shadow: ShadowingParams, rng: np.random.Generator
) -> float:
    """Add a zero-mean Gaussian shadowing term (dB domain) to a median pathloss."""
    return pl_db + rng.normal(0.0, shadow.std_dev_db)


def gain_from_attenuation(total_db: float) -> float:
    """Convert a total attenuation in dB to a linear power gain 10^(-dB/10)."""
    if not math.isfinite(total_db):
        raise ValueError(f"attenuation must be finite, got {total_db}")
    return 10.0 ** (-total_db / 10.0)


def noise_power(bandwidth_hz: float, temperature_k: float) -> float:
    """Thermal noise power k*T*B in watts."""
    if bandwidth_hz <= 0.0 or temperature_k <= 0.0:
        raise ValueError("bandwidth_hz and temperature_k must be > 0")
    return BOLTZMANN_J_PER_K * temperature_k * bandwidth_hz


def draw_realization(
    geometry: GeometryParams,
    shadow: ShadowingParams,
    noise_w: float,
    bandwidth_hz: float,
    rng: np.random.Generator,
) -> ChannelRealization:
    """Draw one two-user realization: distance and shadowing per link.

    Draw order is fixed (distance then shadowing, link 1 then link 2) so a
    seeded generator reproduces the realization exactly.
    """
    gains = []
    for _ in range(2):
        d = drop_user(geometry, rng)
        att = apply_shadowing(pathloss_db(d, geometry), shadow, rng)
        gains.append(gain_from_attenuation(att))
    return ChannelRealization(
        g1=gains[0], g2=gains[1], noise_w=noise_w, bandwidth_hz=bandwidth_hz
    )

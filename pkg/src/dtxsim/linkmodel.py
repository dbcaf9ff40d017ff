"""Shannon-capacity link relationships and closed-form transmit power.

The two-user system transmit power for a guaranteed per-link spectral
efficiency ``sigma_min`` with resource share ``mu`` on link 1:

    P_tx(mu) = mu * (N/G1) * (2^(sigma_min/mu) - 1)
             + (1-mu) * (N/G2) * (2^(sigma_min/(1-mu)) - 1)

Infeasible points (excluded link with nonzero demand, exponent overflow) are
represented by the explicit ``+inf`` sentinel; functions never return NaN.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Beyond this exponent 2^x overflows float64; treat as the +inf sentinel.
_MAX_EXPONENT = 1024.0


@dataclass(frozen=True)
class QosTarget:
    """Guaranteed link rate, identical on both links."""

    rate_bps: float
    bandwidth_hz: float

    def __post_init__(self) -> None:
        if self.rate_bps < 0.0:
            raise ValueError(f"rate_bps must be >= 0, got {self.rate_bps}")
        if self.bandwidth_hz <= 0.0:
            raise ValueError(f"bandwidth_hz must be > 0, got {self.bandwidth_hz}")

    @property
    def sigma_min(self) -> float:
        """Guaranteed spectral efficiency in bps/Hz."""
        return self.rate_bps / self.bandwidth_hz

    @classmethod
    def from_spectral_efficiency(cls, sigma_min: float, bandwidth_hz: float) -> "QosTarget":
        return cls(rate_bps=sigma_min * bandwidth_hz, bandwidth_hz=bandwidth_hz)


@dataclass(frozen=True)
class Weighting:
    """Share of the resource assigned to link 1; link 2 gets 1 - mu."""

    mu: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.mu <= 1.0:
            raise ValueError(f"mu must be in [0, 1], got {self.mu}")


def capacity(bandwidth_hz: float, gamma: float) -> float:
    """AWGN channel capacity W * log2(1 + gamma) in bps."""
    if gamma < 0.0:
        raise ValueError(f"gamma must be >= 0, got {gamma}")
    return bandwidth_hz * math.log2(1.0 + gamma)


def sinr(gain: float, p_tx: float, noise_w: float) -> float:
    """Linear SINR gamma = G * P / N."""
    return gain * p_tx / noise_w


def required_link_power(
    sigma: float, share: float, gain: float, noise_w: float
) -> float:
    """Transmit power to serve spectral efficiency ``sigma`` on share ``share``.

    Returns 0 for sigma = 0 and the +inf sentinel when the share is too small
    to serve the demand (share = 0 or exponent overflow); callers treat +inf
    as outage.
    """
    if sigma == 0.0:
        return 0.0
    if share <= 0.0:
        return math.inf
    exponent = sigma / share
    if exponent > _MAX_EXPONENT:
        return math.inf
    return (2.0**exponent - 1.0) * noise_w / gain


def system_tx_power(
    sigma_min: float, mu: float, g1: float, g2: float, noise_w: float
) -> float:
    """Two-user system transmit power at resource split ``mu``.

    Both links carry ``sigma_min``. Returns 0 for sigma_min = 0; +inf at
    mu in {0, 1} with sigma_min > 0 (the excluded link cannot be served).
    """
    if sigma_min == 0.0:
        return 0.0
    if mu <= 0.0 or mu >= 1.0:
        return math.inf
    p1 = required_link_power(sigma_min, mu, g1, noise_w)
    p2 = required_link_power(sigma_min, 1.0 - mu, g2, noise_w)
    return mu * p1 + (1.0 - mu) * p2


def system_tx_power_array(sigma, mu, g1, g2, noise_w):
    """Vectorized :func:`system_tx_power` with numpy broadcasting.

    ``mu`` must lie strictly inside (0, 1); overflow yields the +inf sentinel.
    """
    sigma = np.asarray(sigma, dtype=float)
    mu = np.asarray(mu, dtype=float)
    with np.errstate(over="ignore"):
        p1 = (np.exp2(sigma / mu) - 1.0) * (noise_w / g1)
        p2 = (np.exp2(sigma / (1.0 - mu)) - 1.0) * (noise_w / g2)
        return mu * p1 + (1.0 - mu) * p2

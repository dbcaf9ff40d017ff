"""Linear supply-power model and the DTX time-share transformation.

Supply power while active: P = P0 + m * P_tx. With DTX at active-time share
t: P = (1-t) * P_sleep + t * (P0 + m * P_tx), and the rate served during the
active phase inflates to sigma / t.
"""

from __future__ import annotations

from dataclasses import dataclass

# Relative slack on the peak-power cap so optimizer results sitting exactly
# on the cap are not rejected by rounding.
PEAK_POWER_REL_TOL = 1e-9


class PeakPowerError(ValueError):
    """Requested transmit power exceeds the peak transmit power cap."""


@dataclass(frozen=True)
class PowerModelParams:
    """Affine supply-power model of a base station."""

    p0_w: float
    m_slope: float
    p_sleep_w: float
    p_max_tx_w: float

    def __post_init__(self) -> None:
        if not self.p0_w > self.p_sleep_w >= 0.0:
            raise ValueError(
                f"require p0_w > p_sleep_w >= 0, got p0={self.p0_w}, "
                f"p_sleep={self.p_sleep_w}"
            )
        if self.m_slope <= 0.0:
            raise ValueError(f"m_slope must be > 0, got {self.m_slope}")
        if self.p_max_tx_w <= 0.0:
            raise ValueError(f"p_max_tx_w must be > 0, got {self.p_max_tx_w}")

    @property
    def p_max_supply_w(self) -> float:
        """Supply power when active at the peak transmit power."""
        return self.p0_w + self.m_slope * self.p_max_tx_w


@dataclass(frozen=True)
class Allocation:
    """Decision variables: resource share mu and active-time share t.

    t = 0 is used only as the fully-asleep marker of the zero-rate solution;
    every rate-serving allocation has t > 0.
    """

    mu: float
    t: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.mu <= 1.0:
            raise ValueError(f"mu must be in [0, 1], got {self.mu}")
        if not 0.0 <= self.t <= 1.0:
            raise ValueError(f"t must be in [0, 1], got {self.t}")


def _check_peak(p_tx_w: float, pm: PowerModelParams) -> None:
    if p_tx_w < 0.0:
        raise ValueError(f"p_tx_w must be >= 0, got {p_tx_w}")
    if p_tx_w > pm.p_max_tx_w * (1.0 + PEAK_POWER_REL_TOL):
        raise PeakPowerError(
            f"p_tx_w={p_tx_w} W exceeds peak transmit power {pm.p_max_tx_w} W"
        )


def supply_power_active(p_tx_w: float, pm: PowerModelParams) -> float:
    """Supply power of an always-on base station: P0 + m * P_tx."""
    _check_peak(p_tx_w, pm)
    return pm.p0_w + pm.m_slope * p_tx_w


def supply_power_dtx(t: float, p_tx_active_w: float, pm: PowerModelParams) -> float:
    """Supply power with sleep share (1-t): (1-t) * P_sleep + t * (P0 + m * P_tx)."""
    if not 0.0 < t <= 1.0:
        raise ValueError(f"t must be in (0, 1], got {t}")
    return (1.0 - t) * pm.p_sleep_w + t * supply_power_active(p_tx_active_w, pm)


def dtx_spectral_efficiency(sigma: float, t: float) -> float:
    """Spectral efficiency required during the active phase: sigma / t."""
    if sigma < 0.0:
        raise ValueError(f"sigma must be >= 0, got {sigma}")
    if not 0.0 < t <= 1.0:
        raise ValueError(f"t must be in (0, 1], got {t}")
    return sigma / t

"""The five allocation policies compared in the supply-power study.

Each scheme maps one channel realization plus a QoS target to a supply
power, a transmit power, an allocation and an outage flag. Batch variants
(``*_batch``) operate on arrays of drops and are the engine used by the
Monte-Carlo sweep; the scalar evaluators wrap them with one-element arrays
so both paths are bit-identical.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from dtxsim.channel import ChannelRealization
from dtxsim.linkmodel import QosTarget
from dtxsim.optimizer import (
    DEFAULT_SETTINGS,
    OptimizerSettings,
    _optimal_mu_t_vec,
    _optimal_mu_vec,
)
from dtxsim.powermodel import PEAK_POWER_REL_TOL, Allocation, PowerModelParams


class SchemeId(str, Enum):
    CONST_MAX = "CONST_MAX"
    SOTA = "SOTA"
    RS_PC = "RS_PC"
    ONOFF_DTX = "ONOFF_DTX"
    RS_PC_DTX = "RS_PC_DTX"


@dataclass(frozen=True)
class SchemeResult:
    scheme: SchemeId
    p_supply_w: float
    p_tx_w: float
    allocation: Allocation
    outage: bool


def _full_power_time_shares(sigma, g1, g2, noise_w: float, pm: PowerModelParams):
    """Per-user active-time fractions when serving sequentially at peak power.

    User i alone on the full band at P_max reaches log2(1 + Pmax*Gi/N)
    bps/Hz, so serving sigma per frame takes t_i = sigma / that.
    """
    sa1 = np.log2(1.0 + pm.p_max_tx_w * g1 / noise_w)
    sa2 = np.log2(1.0 + pm.p_max_tx_w * g2 / noise_w)
    return sigma / sa1, sigma / sa2


def eval_const_max_batch(sigma, g1, g2, noise_w, pm, settings=DEFAULT_SETTINGS):
    """Always-on reference transmitting at peak power regardless of load."""
    sigma = np.atleast_1d(np.asarray(sigma, dtype=float))
    cap_tol = pm.p_max_tx_w * (1.0 + PEAK_POWER_REL_TOL)
    mu, p_req = _optimal_mu_vec(sigma, g1, g2, noise_w, settings)
    outage = p_req > cap_tol
    shape = np.broadcast(sigma, np.asarray(g1)).shape
    p_supply = np.full(shape, pm.p_max_supply_w)
    p_tx = np.full(shape, pm.p_max_tx_w)
    t = np.ones(shape)
    return p_supply, p_tx, np.broadcast_to(mu, shape).copy(), t, outage


def eval_sota_batch(sigma, g1, g2, noise_w, pm, settings=DEFAULT_SETTINGS):
    """Weakly load-dependent reference: half of maximum consumption at zero
    load, rising linearly to full consumption at full load.

    Load is the resource occupancy of a non-power-controlled base station:
    the total time fraction needed at peak power to serve both users.
    """
    sigma = np.atleast_1d(np.asarray(sigma, dtype=float))
    t1, t2 = _full_power_time_shares(sigma, g1, g2, noise_w, pm)
    load_raw = t1 + t2
    outage = load_raw > 1.0 + TIE_EPS
    load = np.minimum(load_raw, 1.0)
    p_supply = 0.5 * pm.p_max_supply_w * (1.0 + load)
    p_tx = load * pm.p_max_tx_w
    mu = np.where(load_raw > 0.0, t1 / np.maximum(load_raw, 1e-300), 0.5)
    return p_supply, p_tx, mu, load, outage


def eval_rs_pc_batch(sigma, g1, g2, noise_w, pm, settings=DEFAULT_SETTINGS):
    """Resource sharing and power control, always on (no sleep mode)."""
    sigma = np.atleast_1d(np.asarray(sigma, dtype=float))
    cap = pm.p_max_tx_w
    cap_tol = cap * (1.0 + PEAK_POWER_REL_TOL)
    mu, p_req = _optimal_mu_vec(sigma, g1, g2, noise_w, settings)
    outage = p_req > cap_tol
    p_tx = np.where(outage, np.inf, np.minimum(p_req, cap))
    p_supply = np.where(outage, np.inf, pm.p0_w + pm.m_slope * np.minimum(p_req, cap))
    shape = p_tx.shape
    return p_supply, p_tx, np.broadcast_to(mu, shape).copy(), np.ones(shape), outage


def eval_onoff_dtx_batch(sigma, g1, g2, noise_w, pm, settings=DEFAULT_SETTINGS):
    """No power control: peak power while awake, users served sequentially,
    sleep for the rest of the frame."""
    sigma = np.atleast_1d(np.asarray(sigma, dtype=float))
    t1, t2 = _full_power_time_shares(sigma, g1, g2, noise_w, pm)
    t = t1 + t2
    outage = t > 1.0 + TIE_EPS
    p_supply = np.where(
        outage,
        np.inf,
        (1.0 - t) * pm.p_sleep_w + t * (pm.p0_w + pm.m_slope * pm.p_max_tx_w),
    )
    p_tx = np.where(outage, np.inf, np.where(t > 0.0, pm.p_max_tx_w, 0.0))
    mu = np.where(t > 0.0, t1 / np.maximum(t, 1e-300), 0.5)
    return p_supply, p_tx, mu, np.where(outage, np.minimum(t, 1.0), t), outage


def eval_rs_pc_dtx_batch(sigma, g1, g2, noise_w, pm, settings=DEFAULT_SETTINGS):
    """Jointly optimal resource sharing, power control and DTX."""
    mu, t, p_tx, p_supply, feasible = _optimal_mu_t_vec(
        sigma, g1, g2, noise_w, pm, settings
    )
    return p_supply, p_tx, mu, t, ~feasible


# numerical slack on the t <= 1 feasibility checks above
TIE_EPS = 1e-12

BATCH_EVALUATORS = {
    SchemeId.CONST_MAX: eval_const_max_batch,
    SchemeId.SOTA: eval_sota_batch,
    SchemeId.RS_PC: eval_rs_pc_batch,
    SchemeId.ONOFF_DTX: eval_onoff_dtx_batch,
    SchemeId.RS_PC_DTX: eval_rs_pc_dtx_batch,
}


def evaluate_scheme(
    scheme: SchemeId,
    realization: ChannelRealization,
    qos: QosTarget,
    pm: PowerModelParams,
    settings: OptimizerSettings = DEFAULT_SETTINGS,
) -> SchemeResult:
    """Evaluate one scheme on a single drop."""
    batch = BATCH_EVALUATORS[SchemeId(scheme)]
    p_supply, p_tx, mu, t, outage = batch(
        np.array([qos.sigma_min]),
        np.array([realization.g1]),
        np.array([realization.g2]),
        realization.noise_w,
        pm,
        settings,
    )
    return SchemeResult(
        scheme=SchemeId(scheme),
        p_supply_w=float(p_supply[0]),
        p_tx_w=float(p_tx[0]),
        allocation=Allocation(mu=float(mu[0]), t=float(min(t[0], 1.0))),
        outage=bool(outage[0]),
    )


def eval_const_max(realization, qos, pm, settings=DEFAULT_SETTINGS) -> SchemeResult:
    return evaluate_scheme(SchemeId.CONST_MAX, realization, qos, pm, settings)


def eval_sota(realization, qos, pm, settings=DEFAULT_SETTINGS) -> SchemeResult:
    return evaluate_scheme(SchemeId.SOTA, realization, qos, pm, settings)


def eval_rs_pc(realization, qos, pm, settings=DEFAULT_SETTINGS) -> SchemeResult:
    return evaluate_scheme(SchemeId.RS_PC, realization, qos, pm, settings)


def eval_onoff_dtx(realization, qos, pm, settings=DEFAULT_SETTINGS) -> SchemeResult:
    return evaluate_scheme(SchemeId.ONOFF_DTX, realization, qos, pm, settings)


def eval_rs_pc_dtx(realization, qos, pm, settings=DEFAULT_SETTINGS) -> SchemeResult:
    return evaluate_scheme(SchemeId.RS_PC_DTX, realization, qos, pm, settings)

"""The five allocation schemes: reference values and ordering properties."""

import math

import numpy as np
import pytest

from dtxsim.channel import ChannelRealization
from dtxsim.linkmodel import QosTarget, capacity, sinr
from dtxsim.powermodel import PowerModelParams
from dtxsim.schemes import (
    BATCH_EVALUATORS,
    SchemeId,
    eval_const_max,
    eval_onoff_dtx,
    eval_rs_pc,
    eval_rs_pc_dtx,
    eval_sota,
    evaluate_scheme,
)

PM = PowerModelParams(p0_w=233.0, m_slope=5.0, p_sleep_w=50.0,
                      p_max_tx_w=10.0 ** (46.0 / 10.0) / 1000.0)
NOISE = 1e-13
BW = 1e7


def realization(g1, g2):
    return ChannelRealization(g1=g1, g2=g2, noise_w=NOISE, bandwidth_hz=BW)


def qos(rate):
    return QosTarget(rate_bps=rate, bandwidth_hz=BW)


SYM = realization(1e-10, 1e-10)


def test_const_max_reference():
    r = eval_const_max(SYM, qos(1e7), PM)
    assert r.p_supply_w == pytest.approx(432.05, abs=0.01)
    assert r.p_tx_w == pytest.approx(PM.p_max_tx_w)
    assert not r.outage
    # independent of gains and of rate (always-on reference)
    assert eval_const_max(realization(1e-12, 1e-9), qos(0.0), PM).p_supply_w == \
        r.p_supply_w


def test_const_max_outage_tracks_best_split_feasibility():
    weak = realization(1e-15, 1e-15)
    assert eval_const_max(weak, qos(6e7), PM).outage
    assert not eval_const_max(weak, qos(0.0), PM).outage


def test_sota_reference_points():
    # zero load: half of maximum consumption
    r0 = eval_sota(SYM, qos(0.0), PM)
    assert r0.p_supply_w == pytest.approx(0.5 * PM.p_max_supply_w, rel=1e-12)
    assert r0.p_supply_w == pytest.approx(216.03, abs=0.01)
    assert not r0.outage


def test_sota_affine_in_load():
    # supply is affine in the load: second differences over a rate grid of
    # equal load steps vanish
    g = 1e-10
    sa = math.log2(1.0 + PM.p_max_tx_w * g / NOISE)
    loads = np.array([0.2, 0.4, 0.6])
    rates = loads * sa / 2.0 * BW  # two equal users
    supplies = [eval_sota(realization(g, g), qos(rt), PM).p_supply_w for rt in rates]
    assert supplies[0] + supplies[2] - 2 * supplies[1] == pytest.approx(0.0, abs=1e-9)
    assert supplies[1] == pytest.approx(0.5 * PM.p_max_supply_w * 1.4, rel=1e-9)


def test_sota_full_load_and_outage():
    g = 1e-10
    sa = math.log2(1.0 + PM.p_max_tx_w * g / NOISE)
    full = eval_sota(realization(g, g), qos(sa / 2.0 * BW), PM)
    assert full.p_supply_w == pytest.approx(PM.p_max_supply_w, rel=1e-9)
    assert not full.outage
    over = eval_sota(realization(g, g), qos(1.01 * sa / 2.0 * BW), PM)
    assert over.outage


def test_rs_pc_reference_points():
    idle = eval_rs_pc(SYM, qos(0.0), PM)
    assert idle.p_supply_w == 233.0
    assert not idle.outage
    r = eval_rs_pc(SYM, qos(1e7), PM)  # sigma 1, symmetric
    assert r.p_tx_w == pytest.approx(3e-3, rel=1e-9)
    assert r.p_supply_w == pytest.approx(233.015, rel=1e-6)
    assert eval_rs_pc(realization(1e-15, 1e-15), qos(6e7), PM).outage


def test_onoff_dtx_reference_points():
    idle = eval_onoff_dtx(SYM, qos(0.0), PM)
    assert idle.p_supply_w == 50.0
    assert idle.allocation.t == 0.0
    # full-power SINR of 3 on both links: 2 bps/Hz while awake, so serving
    # 0.5 bps/Hz per user takes t = 0.25 each
    g = 3.0 * NOISE / PM.p_max_tx_w
    r = eval_onoff_dtx(realization(g, g), qos(0.5 * BW), PM)
    assert r.allocation.t == pytest.approx(0.5, rel=1e-12)
    assert r.p_supply_w == pytest.approx(0.5 * 50.0 + 0.5 * PM.p_max_supply_w, rel=1e-9)
    assert r.p_supply_w == pytest.approx(241.03, abs=0.01)
    # per-user time-capacity reconstruction
    t_user = r.allocation.t * r.allocation.mu
    served = t_user * capacity(BW, sinr(g, PM.p_max_tx_w, NOISE))
    assert served == pytest.approx(0.5 * BW, rel=1e-9)
    assert eval_onoff_dtx(realization(g, g), qos(1.01 * BW), PM).outage


def test_rs_pc_dtx_reference_points():
    idle = eval_rs_pc_dtx(SYM, qos(0.0), PM)
    assert idle.p_supply_w == 50.0
    assert not idle.outage


def test_rs_pc_dtx_dominates_component_schemes():
    rng = np.random.default_rng(30)
    for _ in range(60):
        g1 = 10.0 ** rng.uniform(-13.0, -8.0)
        g2 = 10.0 ** rng.uniform(-13.0, -8.0)
        rate = 10.0 ** rng.uniform(5.0, 7.8)
        r = realization(g1, g2)
        opt = eval_rs_pc_dtx(r, qos(rate), PM)
        for other in (eval_rs_pc, eval_onoff_dtx):
            o = other(r, qos(rate), PM)
            if not o.outage:
                assert not opt.outage
                assert opt.p_supply_w <= o.p_supply_w + 1e-9


def test_dominance_chain_batch():
    rng = np.random.default_rng(31)
    n = 2000
    g1 = 10.0 ** rng.uniform(-15.0, -5.0, n)
    g2 = 10.0 ** rng.uniform(-15.0, -5.0, n)
    sigma = rng.uniform(0.01, 8.0, n)
    out = {
        s: BATCH_EVALUATORS[s](sigma, g1, g2, NOISE, PM)
        for s in SchemeId
    }
    sup = {s: out[s][0] for s in SchemeId}
    feas = {s: ~out[s][4] for s in SchemeId}
    both = feas[SchemeId.RS_PC_DTX] & feas[SchemeId.ONOFF_DTX]
    assert np.all(sup[SchemeId.RS_PC_DTX][both] <= sup[SchemeId.ONOFF_DTX][both] + 1e-9)
    both = feas[SchemeId.RS_PC_DTX] & feas[SchemeId.RS_PC]
    assert np.all(sup[SchemeId.RS_PC_DTX][both] <= sup[SchemeId.RS_PC][both] + 1e-9)
    both = feas[SchemeId.RS_PC] & feas[SchemeId.CONST_MAX]
    assert np.all(sup[SchemeId.RS_PC][both] <= sup[SchemeId.CONST_MAX][both] + 1e-9)
    # outage consistency: RS_PC_DTX searches a superset of both policies,
    # so its outage implies theirs
    outage_opt = out[SchemeId.RS_PC_DTX][4]
    assert np.all(out[SchemeId.RS_PC][4][outage_opt])
    assert np.all(out[SchemeId.ONOFF_DTX][4][outage_opt])


def test_supply_power_bounds():
    rng = np.random.default_rng(32)
    n = 500
    g1 = 10.0 ** rng.uniform(-15.0, -5.0, n)
    g2 = 10.0 ** rng.uniform(-15.0, -5.0, n)
    for s in SchemeId:
        for sigma in (0.0, 0.5, 3.0):
            sup, _, _, _, outage = BATCH_EVALUATORS[s](
                np.full(n, sigma), g1, g2, NOISE, PM
            )
            ok = ~outage
            assert np.all(sup[ok] >= PM.p_sleep_w - 1e-12)
            assert np.all(sup[ok] <= PM.p_max_supply_w + 1e-9)


def test_evaluate_scheme_dispatch():
    r = evaluate_scheme(SchemeId.RS_PC, SYM, qos(0.0), PM)
    assert r.scheme is SchemeId.RS_PC
    assert r.p_supply_w == 233.0

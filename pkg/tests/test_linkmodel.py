"""Shannon relationships and the closed-form system transmit power."""

import math

import numpy as np
import pytest

from dtxsim.linkmodel import (
    QosTarget,
    Weighting,
    capacity,
    required_link_power,
    sinr,
    system_tx_power,
    system_tx_power_array,
)


def test_capacity_reference_points():
    assert capacity(1e7, 1.0) == pytest.approx(1e7, rel=1e-12)
    assert capacity(1e7, 0.0) == 0.0
    assert capacity(1e7, 3.0) == pytest.approx(2e7, rel=1e-12)
    with pytest.raises(ValueError):
        capacity(1e7, -0.1)


def test_sinr():
    assert sinr(1e-10, 1e-1, 1e-13) == pytest.approx(100.0, rel=1e-12)
    assert sinr(1e-10, 0.0, 1e-13) == 0.0
    assert sinr(1e-10, 2e-3, 1e-13) == pytest.approx(2 * sinr(1e-10, 1e-3, 1e-13))


def test_required_link_power():
    assert required_link_power(1.0, 0.5, 1e-10, 1e-13) == pytest.approx(3e-3)
    assert required_link_power(0.0, 0.7, 1e-10, 1e-13) == 0.0
    assert required_link_power(2.0, 1.0, 1e-10, 1e-13) == pytest.approx(3e-3)
    assert required_link_power(1.0, 0.0, 1e-10, 1e-13) == math.inf


def test_system_tx_power_symmetric_case():
    assert system_tx_power(1.0, 0.5, 1e-10, 1e-10, 1e-13) == pytest.approx(3e-3)
    assert system_tx_power(0.0, 0.3, 1e-10, 1e-10, 1e-13) == 0.0


def test_system_tx_power_asymmetric_case():
    # direct evaluation with N/G1 = 1, N/G2 = 10 at mu = 0.3
    expected = 0.3 * (2.0 ** (1.0 / 0.3) - 1.0) + 0.7 * 10.0 * (2.0 ** (1.0 / 0.7) - 1.0)
    got = system_tx_power(1.0, 0.3, 1e-13, 1e-14, 1e-13)
    assert got == pytest.approx(expected, rel=1e-12)
    assert got == pytest.approx(14.566, abs=0.001)


def test_system_tx_power_boundaries_are_infinite():
    assert system_tx_power(1.0, 0.0, 1e-10, 1e-10, 1e-13) == math.inf
    assert system_tx_power(1.0, 1.0, 1e-10, 1e-10, 1e-13) == math.inf


def test_round_trip_capacity_of_required_power():
    from dtxsim.linkmodel import capacity, sinr

    for sigma in (0.01, 0.5, 1.0, 3.0, 6.0):
        for g in (1e-15, 1e-10, 1e-5):
            p = required_link_power(sigma, 1.0, g, 1e-13)
            served = capacity(1e7, sinr(g, p, 1e-13))
            assert served == pytest.approx(sigma * 1e7, rel=1e-9)


def test_symmetry_under_swap():
    # dyadic mu values make 1 - (1 - mu) exact in floating point
    rng = np.random.default_rng(10)
    for _ in range(200):
        mu = rng.integers(1, 64) / 64.0
        sigma = rng.uniform(0.1, 6.0)
        g1 = 10.0 ** rng.uniform(-15, -5)
        g2 = 10.0 ** rng.uniform(-15, -5)
        assert system_tx_power(sigma, mu, g1, g2, 1e-13) == system_tx_power(
            sigma, 1.0 - mu, g2, g1, 1e-13
        )


def test_strict_convexity_in_mu():
    rng = np.random.default_rng(11)
    h = 1e-4
    for _ in range(500):
        sigma = rng.uniform(0.1, 6.0)
        g1 = 10.0 ** rng.uniform(-15, -5)
        g2 = 10.0 ** rng.uniform(-15, -5)
        mu = rng.uniform(0.05, 0.95)
        f = lambda m: system_tx_power(sigma, m, g1, g2, 1e-13)
        second = f(mu - h) - 2.0 * f(mu) + f(mu + h)
        assert second > 0.0


def test_monotone_in_sigma():
    sigmas = np.linspace(0.1, 6.0, 30)
    for mu in (0.2, 0.5, 0.8):
        p = [system_tx_power(s, mu, 1e-11, 1e-12, 1e-13) for s in sigmas]
        assert all(b > a for a, b in zip(p, p[1:]))


def test_divergence_near_boundary():
    mid = system_tx_power(1.0, 0.5, 1e-10, 1e-10, 1e-13)
    edge = system_tx_power(1.0, 1e-6, 1e-10, 1e-10, 1e-13)
    assert edge >= 1e3 * mid


def test_array_version_matches_scalar():
    mu = np.array([0.1, 0.25, 0.5, 0.9])
    p = system_tx_power_array(1.5, mu, 1e-11, 1e-12, 1e-13)
    for m, v in zip(mu, p):
        assert v == pytest.approx(system_tx_power(1.5, float(m), 1e-11, 1e-12, 1e-13),
                                  rel=1e-12)


def test_qos_target():
    q = QosTarget(rate_bps=1e7, bandwidth_hz=1e7)
    assert q.sigma_min == 1.0
    assert QosTarget.from_spectral_efficiency(2.0, 1e7).rate_bps == 2e7
    with pytest.raises(ValueError):
        QosTarget(rate_bps=-1.0, bandwidth_hz=1e7)


def test_weighting_bounds():
    Weighting(0.0)
    Weighting(1.0)
    with pytest.raises(ValueError):
        Weighting(1.5)

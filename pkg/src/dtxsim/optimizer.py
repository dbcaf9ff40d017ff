"""Power-minimizing resource allocation.

``optimal_mu`` finds the resource split that minimizes the two-user system
transmit power (strictly convex in mu on (0, 1), so golden-section search
converges to the global minimum). ``optimal_mu_t`` jointly optimizes the
split and the DTX active-time share for supply power; the outer problem in t
is not guaranteed unimodal, so a log-spaced coarse scan precedes bracketed
refinement. ``brute_force_mu`` / ``brute_force_mu_t`` are independent
exhaustive-grid oracles used for verification.

All searches are deterministic, pure functions of their arguments. Candidate
points violating the peak transmit power cap receive the +inf sentinel rather
than being clamped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from dtxsim.linkmodel import system_tx_power_array
from dtxsim.powermodel import PEAK_POWER_REL_TOL, Allocation, PowerModelParams

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0

# Open-interval guard for the mu search; the objective diverges at 0 and 1.
MU_EPS = 1e-9

# Active-phase spectral efficiencies above this are infeasible for any gain
# the channel model can produce under the peak-power cap; bounds the t grid.
SIGMA_ACTIVE_MAX = 44.0

# Allocations whose supply powers agree within this relative band are ties;
# the larger active-time share wins (less aggressive sleeping).
TIE_REL_TOL = 1e-12


@dataclass(frozen=True)
class OptimizerSettings:
    mu_tolerance: float = 1e-7
    t_grid_size: int = 64
    refine_iterations: int = 48
    grid_resolution_oracle: int = 1000

    def __post_init__(self) -> None:
        if self.mu_tolerance <= 0.0:
            raise ValueError(f"mu_tolerance must be > 0, got {self.mu_tolerance}")
        if self.t_grid_size < 8:
            raise ValueError(f"t_grid_size must be >= 8, got {self.t_grid_size}")
        if self.refine_iterations < 1:
            raise ValueError(
                f"refine_iterations must be >= 1, got {self.refine_iterations}"
            )
        if self.grid_resolution_oracle < 1000:
            raise ValueError(
                f"grid_resolution_oracle must be >= 1000, got "
                f"{self.grid_resolution_oracle}"
            )


DEFAULT_SETTINGS = OptimizerSettings()


@dataclass(frozen=True)
class OptimalAllocation:
    """Solution of the supply-power minimization for one realization."""

    allocation: Allocation
    p_tx_w: float
    p_supply_w: float
    feasible: bool


def _golden_min(f, a, b, n_iter: int):
    """Vectorized golden-section minimization on per-element brackets [a, b].

    ``f`` maps an array of points to objective values (+inf allowed). One
    objective evaluation per iteration; bracket width shrinks by INV_PHI
    each step. Returns (argmin, min) arrays.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc = f(c)
    fd = f(d)
    for _ in range(n_iter):
        left = fc < fd
        new_b = np.where(left, d, b)
        new_a = np.where(left, a, c)
        width = new_b - new_a
        # reuse: old c becomes the right probe of [a, d]; old d the left
        # probe of [c, b]
        new_d = np.where(left, c, new_a + INV_PHI * width)
        new_c = np.where(left, new_b - INV_PHI * width, d)
        f_eval = f(np.where(left, new_c, new_d))
        fc, fd = np.where(left, f_eval, fd), np.where(left, fc, f_eval)
        a, b, c, d = new_a, new_b, new_c, new_d
    left = fc < fd
    return np.where(left, c, d), np.where(left, fc, fd)


def _mu_iterations(settings: OptimizerSettings) -> int:
    return max(1, math.ceil(math.log(settings.mu_tolerance) / math.log(INV_PHI)))


def _optimal_mu_vec(sigma, g1, g2, noise_w: float, settings: OptimizerSettings):
    """Golden-section mu search, vectorized over broadcastable inputs."""
    sigma, g1, g2 = np.broadcast_arrays(
        np.asarray(sigma, dtype=float),
        np.asarray(g1, dtype=float),
        np.asarray(g2, dtype=float),
    )

    def f(mu):
        return system_tx_power_array(sigma, mu, g1, g2, noise_w)

    a = np.full(sigma.shape, MU_EPS)
    b = np.full(sigma.shape, 1.0 - MU_EPS)
    return _golden_min(f, a, b, _mu_iterations(settings))


def optimal_mu(
    sigma_min: float,
    g1: float,
    g2: float,
    noise_w: float,
    settings: OptimizerSettings = DEFAULT_SETTINGS,
) -> tuple[float, float]:
    """Minimize the system transmit power over mu; returns (mu*, p_tx*)."""
    mu, p = _optimal_mu_vec(
        np.array([sigma_min]), np.array([g1]), np.array([g2]), noise_w, settings
    )
    return float(mu[0]), float(p[0])


def _take_candidate(cand_val, cand_t, cur_val, cur_t):
    """Accept a candidate if strictly better, or tied with a larger t."""
    finite_cur = np.isfinite(cur_val)
    lower = np.where(finite_cur, cur_val * (1.0 - TIE_REL_TOL), np.inf)
    upper = np.where(finite_cur, cur_val * (1.0 + TIE_REL_TOL), np.inf)
    strictly = cand_val < lower
    tied = (cand_val <= upper) & np.isfinite(cand_val) & (cand_t > cur_t)
    return strictly | tied


def _optimal_mu_t_vec(
    sigma, g1, g2, noise_w: float, pm: PowerModelParams, settings: OptimizerSettings
):
    """Joint (mu, t) supply-power minimization, vectorized over drops.

    Returns arrays (mu, t, p_tx, p_supply, feasible). Infeasible entries
    carry +inf powers and the t = 1 search attempt's mu.
    """
    sigma, g1, g2 = np.broadcast_arrays(
        np.atleast_1d(np.asarray(sigma, dtype=float)),
        np.atleast_1d(np.asarray(g1, dtype=float)),
        np.atleast_1d(np.asarray(g2, dtype=float)),
    )
    cap = pm.p_max_tx_w
    cap_tol = cap * (1.0 + PEAK_POWER_REL_TOL)

    def eval_at(t):
        mu_t, p_t = _optimal_mu_vec(sigma / t, g1, g2, noise_w, settings)
        supply = (1.0 - t) * pm.p_sleep_w + t * (
            pm.p0_w + pm.m_slope * np.minimum(p_t, cap)
        )
        return mu_t, p_t, np.where(p_t <= cap_tol, supply, np.inf)

    k_max = settings.t_grid_size - 1
    t_lo = np.clip(sigma / SIGMA_ACTIVE_MAX, 1e-7, 0.5)

    def t_at(k):
        # log-spaced from t_lo (k = 0) to exactly 1.0 (k = k_max)
        return t_lo ** (1.0 - np.asarray(k, dtype=float) / k_max)

    # coarse scan, descending t so ties keep the larger active share
    best_t = np.ones(sigma.shape)
    best_mu, best_ptx, best_val = eval_at(best_t)
    best_k = np.full(sigma.shape, k_max)
    for k in range(k_max - 1, -1, -1):
        t_k = t_at(np.full(sigma.shape, k))
        mu_k, p_k, val_k = eval_at(t_k)
        lower = np.where(np.isfinite(best_val), best_val * (1.0 - TIE_REL_TOL), np.inf)
        better = val_k < lower
        best_val = np.where(better, val_k, best_val)
        best_mu = np.where(better, mu_k, best_mu)
        best_ptx = np.where(better, p_k, best_ptx)
        best_t = np.where(better, t_k, best_t)
        best_k = np.where(better, k, best_k)

    # bracketed refinement around the coarse argmin
    a = t_at(np.clip(best_k - 1, 0, k_max))
    b = t_at(np.clip(best_k + 1, 0, k_max))
    t_ref, _ = _golden_min(lambda t: eval_at(t)[2], a, b, settings.refine_iterations)
    mu_ref, p_ref, val_ref = eval_at(t_ref)
    take = _take_candidate(val_ref, t_ref, best_val, best_t)
    best_val = np.where(take, val_ref, best_val)
    best_mu = np.where(take, mu_ref, best_mu)
    best_ptx = np.where(take, p_ref, best_ptx)
    best_t = np.where(take, t_ref, best_t)

    # closed-form candidate: serve the users sequentially at the peak power
    # (a member of the (mu, t) space; seeds the feasibility boundary)
    sa1 = np.log2(1.0 + cap * g1 / noise_w)
    sa2 = np.log2(1.0 + cap * g2 / noise_w)
    t1 = sigma / sa1
    t_on = t1 + sigma / sa2
    val_on = np.where(
        (t_on > 0.0) & (t_on <= 1.0),
        (1.0 - t_on) * pm.p_sleep_w + t_on * (pm.p0_w + pm.m_slope * cap),
        np.inf,
    )
    mu_on = np.where(t_on > 0.0, t1 / np.maximum(t_on, 1e-300), 0.5)
    take = _take_candidate(val_on, t_on, best_val, best_t)
    best_val = np.where(take, val_on, best_val)
    best_mu = np.where(take, mu_on, best_mu)
    best_ptx = np.where(take, cap, best_ptx)
    best_t = np.where(take, t_on, best_t)

    # zero rate: fully asleep, t = 0 marker
    idle = sigma <= 0.0
    best_mu = np.where(idle, 0.5, best_mu)
    best_t = np.where(idle, 0.0, best_t)
    best_ptx = np.where(idle, 0.0, best_ptx)
    best_val = np.where(idle, pm.p_sleep_w, best_val)

    feasible = np.isfinite(best_val)
    best_ptx = np.where(feasible, np.minimum(best_ptx, cap), np.inf)
    return best_mu, best_t, best_ptx, best_val, feasible


def optimal_mu_t(
    sigma_min: float,
    realization,
    pm: PowerModelParams,
    settings: OptimizerSettings = DEFAULT_SETTINGS,
) -> OptimalAllocation:
    """Jointly optimize (mu, t) for minimum supply power on one realization."""
    mu, t, p_tx, p_supply, feasible = _optimal_mu_t_vec(
        sigma_min, realization.g1, realization.g2, realization.noise_w, pm, settings
    )
    return OptimalAllocation(
        allocation=Allocation(mu=float(mu[0]), t=float(t[0])),
        p_tx_w=float(p_tx[0]),
        p_supply_w=float(p_supply[0]),
        feasible=bool(feasible[0]),
    )


def brute_force_mu(
    sigma_min: float, g1: float, g2: float, noise_w: float, resolution: int
) -> tuple[float, float]:
    """Exhaustive scan over a uniform mu grid on (0, 1); verification oracle."""
    mu = np.arange(1, resolution + 1) / (resolution + 1.0)
    p = system_tx_power_array(sigma_min, mu, g1, g2, noise_w)
    i = int(np.argmin(p))
    return float(mu[i]), float(p[i])


def brute_force_mu_t(
    sigma_min: float, realization, pm: PowerModelParams, resolution: int
) -> OptimalAllocation:
    """Exhaustive (mu, t) grid scan with the peak-power cap; verification oracle."""
    if sigma_min <= 0.0:
        return OptimalAllocation(Allocation(0.5, 0.0), 0.0, pm.p_sleep_w, True)
    cap = pm.p_max_tx_w
    cap_tol = cap * (1.0 + PEAK_POWER_REL_TOL)
    mu = np.arange(1, resolution + 1) / (resolution + 1.0)
    t = np.arange(resolution, 0, -1) / float(resolution)  # descending, includes 1.0
    p = system_tx_power_array(
        (sigma_min / t)[:, None], mu[None, :], realization.g1, realization.g2,
        realization.noise_w,
    )
    supply = np.where(
        p <= cap_tol,
        (1.0 - t)[:, None] * pm.p_sleep_w
        + t[:, None] * (pm.p0_w + pm.m_slope * np.minimum(p, cap)),
        np.inf,
    )
    i = int(np.argmin(supply))  # first occurrence: largest t among exact ties
    val = float(supply.flat[i])
    if not math.isfinite(val):
        return OptimalAllocation(Allocation(0.5, 1.0), math.inf, math.inf, False)
    r, c = divmod(i, resolution)
    return OptimalAllocation(
        allocation=Allocation(mu=float(mu[c]), t=float(t[r])),
        p_tx_w=float(min(p[r, c], cap)),
        p_supply_w=val,
        feasible=True,
    )

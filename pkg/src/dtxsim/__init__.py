"""Two-user downlink supply-power simulator.

Monte-Carlo comparison of base-station resource allocation schemes
(constant full power, SOTA reference, RS-PC, ON/OFF DTX, joint RS-PC-DTX)
under a guaranteed-link-rate constraint and a linear supply-power model.
"""

from dtxsim.channel import (
    BOLTZMANN_J_PER_K,
    ChannelRealization,
    GeometryParams,
    ShadowingParams,
    apply_shadowing,
    drop_user,
    draw_realization,
    gain_from_attenuation,
    noise_power,
    pathloss_db,
)
from dtxsim.linkmodel import (
    QosTarget,
    Weighting,
    capacity,
    required_link_power,
    sinr,
    system_tx_power,
)
from dtxsim.powermodel import (
    Allocation,
    PowerModelParams,
    dtx_spectral_efficiency,
    supply_power_active,
    supply_power_dtx,
)
from dtxsim.optimizer import (
    OptimalAllocation,
    OptimizerSettings,
    brute_force_mu,
    brute_force_mu_t,
    optimal_mu,
    optimal_mu_t,
)
from dtxsim.schemes import SchemeId, SchemeResult, evaluate_scheme
from dtxsim.montecarlo import (
    GainReport,
    SimulationConfig,
    SweepCurve,
    SweepPoint,
    gain_report,
    run_drop,
    run_sweep,
    table_default_config,
)

__version__ = "0.1.0"

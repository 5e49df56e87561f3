"""Sum-rate schemes and sum-capacity upper bounds for a two-user Gaussian
MAC interfering with a point-to-point link."""

from .bounds import (
    GaussianJointModel,
    GenieParams,
    MAC_INPUTS,
    P2P_INPUT,
    RX1_OUTPUTS,
    RX2_OUTPUTS,
    VARIABLES,
    build_genie_joint_cov,
    c_sigma_1,
    c_sigma_2,
    gaussian_mutual_info,
    genie_bound_objective,
)
from .errors import (
    ConstraintError,
    ContractError,
    DegenerateInputError,
    DomainError,
    InfeasibleError,
    InvalidRegimeError,
    NumericError,
    PimacError,
)
from .experiments import (
    CovarianceCheckReport,
    CURVES,
    SweepConfig,
    SweepRow,
    classify_power_point,
    detect_pc_tin_regimes,
    emit_csv,
    montecarlo_covariance_check,
    render_csv,
    run_sweep,
)
from .model import (
    MacRegionBounds,
    PimacParams,
    PowerAllocation,
    SchemeResult,
    TimeShare,
    effective_noise_at_rx1,
    half_log,
)
from .optimize import (
    OptConfig,
    OptResult,
    maximize_box,
    maximize_scalar,
    minimize_constrained,
)
from .schemes import (
    TdmaTinDecomposition,
    alpha_prime,
    alpha_star,
    pc_tin_objective,
    pc_tin_sum_rate,
    plain_tdma_sum_rate,
    sd_tin_region,
    sd_tin_sum_rate,
    tdma_tin_components,
    tdma_tin_sum_rate,
)

__version__ = "0.1.0"

__all__ = [
    "ConstraintError",
    "ContractError",
    "CovarianceCheckReport",
    "CURVES",
    "DegenerateInputError",
    "DomainError",
    "GaussianJointModel",
    "GenieParams",
    "InfeasibleError",
    "InvalidRegimeError",
    "MAC_INPUTS",
    "MacRegionBounds",
    "NumericError",
    "OptConfig",
    "OptResult",
    "P2P_INPUT",
    "PimacError",
    "PimacParams",
    "PowerAllocation",
    "RX1_OUTPUTS",
    "RX2_OUTPUTS",
    "SchemeResult",
    "SweepConfig",
    "SweepRow",
    "TdmaTinDecomposition",
    "TimeShare",
    "VARIABLES",
    "alpha_prime",
    "alpha_star",
    "build_genie_joint_cov",
    "c_sigma_1",
    "c_sigma_2",
    "classify_power_point",
    "detect_pc_tin_regimes",
    "effective_noise_at_rx1",
    "emit_csv",
    "gaussian_mutual_info",
    "genie_bound_objective",
    "half_log",
    "maximize_box",
    "maximize_scalar",
    "minimize_constrained",
    "montecarlo_covariance_check",
    "pc_tin_objective",
    "pc_tin_sum_rate",
    "plain_tdma_sum_rate",
    "render_csv",
    "run_sweep",
    "sd_tin_region",
    "sd_tin_sum_rate",
    "tdma_tin_components",
    "tdma_tin_sum_rate",
]

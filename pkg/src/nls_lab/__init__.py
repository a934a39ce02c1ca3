"""Stability toolkit for standing waves of the 1d double-power NLS.

i u_t + u_xx + a_p |u|^(p-1) u + a_q |u|^(q-1) u = 0,  1 < p < q.
"""

from .classify import (
    ArgmaxEntry,
    CellStatus,
    CriticalPoint,
    CriticalSearch,
    GridSpec,
    SearchStatus,
    StabilityClass,
    SurfaceCell,
    argmax_curve,
    classify,
    find_omega_crit,
    second_derivative_gamma,
    surface_sweep,
)
from .errors import AccuracyError, DomainError, NoStandingWaveError, NumericError
from .evolve import (
    Diagnostics,
    ExperimentRecord,
    PerturbationKind,
    PerturbationSpec,
    SimulationConfig,
    SimulationState,
    evolve,
    perturbation_experiment,
)
from .model import (
    FrequencyWindow,
    ModelParams,
    dphi0_domega,
    frequency_window,
    omega_from_phi0,
    phi0_from_omega,
)
from .profile import Profile, build_profile, closed_form_profile, mass_of_wave
from .quadrature import QuadratureConfig, integrate_01, one_minus_power
from .slope import (
    LimitLabel,
    SlopeEvaluation,
    ZeroFrequencyResult,
    f_gamma,
    f_of_phi0,
    i_gamma,
    i_gamma_dphi0,
    j_star_limit_sign,
    j_zero_limit,
    monotone_ratio,
    slope,
    thresholds,
)
from .special import beta, h_function, h_function_quadrature, log_gamma

__version__ = "0.1.0"

__all__ = [
    "AccuracyError",
    "ArgmaxEntry",
    "CellStatus",
    "CriticalPoint",
    "CriticalSearch",
    "Diagnostics",
    "DomainError",
    "ExperimentRecord",
    "FrequencyWindow",
    "GridSpec",
    "LimitLabel",
    "ModelParams",
    "NoStandingWaveError",
    "NumericError",
    "PerturbationKind",
    "PerturbationSpec",
    "Profile",
    "QuadratureConfig",
    "SearchStatus",
    "SimulationConfig",
    "SimulationState",
    "SlopeEvaluation",
    "StabilityClass",
    "SurfaceCell",
    "ZeroFrequencyResult",
    "argmax_curve",
    "beta",
    "build_profile",
    "classify",
    "closed_form_profile",
    "dphi0_domega",
    "evolve",
    "f_gamma",
    "f_of_phi0",
    "find_omega_crit",
    "frequency_window",
    "h_function",
    "h_function_quadrature",
    "i_gamma",
    "i_gamma_dphi0",
    "integrate_01",
    "j_star_limit_sign",
    "j_zero_limit",
    "log_gamma",
    "mass_of_wave",
    "monotone_ratio",
    "omega_from_phi0",
    "one_minus_power",
    "perturbation_experiment",
    "phi0_from_omega",
    "second_derivative_gamma",
    "slope",
    "surface_sweep",
    "thresholds",
]

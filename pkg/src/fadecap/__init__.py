"""Numerical laboratory for noncoherent multipath fading channel capacity.

Implements and cross-validates capacity bounds for the discrete-time
channel Y_k = sum_l H_k^(l) x_{k-l} + Z_k, where the decay of the
path-gain variances {alpha_l} decides the high-SNR regime: bounded
capacity (exponential or slower decay), unbounded double-logarithmic
growth (faster than exponential), and pre-loglog 1 (finitely many
paths).
"""

from .bounds import (
    BoundError,
    BoundReport,
    flat_fading_asymptote,
    log_gamma,
    lower_bound_closed_form,
    preloglog_lower,
    psi,
    rho_tilde,
    upper_bound_duality,
    upper_bound_exponential,
    upsilon,
)
from .channel import ChannelConfig, ChannelError, simulate, theoretical_output_power
from .gains import (
    EULER_GAMMA,
    GainModelError,
    GainSpec,
    GaussMarkov,
    MemorylessGaussian,
    entropy_rate,
    expected_log_sq,
    inf_h_minus_logalpha,
    sample_path,
)
from .mc import (
    ConstantMagnitude,
    LogUniformSquared,
    McError,
    McEstimate,
    interference_power,
    lemma1_bound_exact,
    lemma1_bound_mc,
    mi_oracle_scalar,
    steady_state_interference,
)
from .profiles import (
    Classification,
    FiniteProfile,
    GeometricProfile,
    ProfileError,
    SuperExponentialProfile,
    TableProfile,
    VarianceProfile,
    Verdict,
    choose_L,
    choose_L_geometric,
    classify,
)
from .signaling import (
    SchemeError,
    SignalingScheme,
    entropy_identity,
    sample_block,
    symbol_second_moment,
)

__version__ = "0.1.0"

__all__ = [
    "BoundError",
    "BoundReport",
    "ChannelConfig",
    "ChannelError",
    "Classification",
    "ConstantMagnitude",
    "EULER_GAMMA",
    "FiniteProfile",
    "GainModelError",
    "GainSpec",
    "GaussMarkov",
    "GeometricProfile",
    "LogUniformSquared",
    "McError",
    "McEstimate",
    "MemorylessGaussian",
    "ProfileError",
    "SchemeError",
    "SignalingScheme",
    "SuperExponentialProfile",
    "TableProfile",
    "VarianceProfile",
    "Verdict",
    "choose_L",
    "choose_L_geometric",
    "classify",
    "entropy_identity",
    "entropy_rate",
    "expected_log_sq",
    "flat_fading_asymptote",
    "inf_h_minus_logalpha",
    "interference_power",
    "lemma1_bound_exact",
    "lemma1_bound_mc",
    "log_gamma",
    "lower_bound_closed_form",
    "mi_oracle_scalar",
    "preloglog_lower",
    "psi",
    "rho_tilde",
    "sample_block",
    "sample_path",
    "simulate",
    "steady_state_interference",
    "symbol_second_moment",
    "theoretical_output_power",
    "upper_bound_duality",
    "upper_bound_exponential",
    "upsilon",
]

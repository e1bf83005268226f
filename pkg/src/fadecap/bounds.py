"""Closed-form capacity bounds for the multipath fading channel.

Upper bounds:

* an SNR-independent ceiling log(2 pi^2 / sqrt(rho~)) - inf(h_l - log alpha_l)
  valid whenever the variance ratios alpha_{l+1}/alpha_l stay above some
  rho > 0 from index ell0 on;
* a finite-SNR duality bound
  -inf(h_l - log alpha_l) + log(1 + log(1 + alpha SNR)) + Psi(SNR) + log pi + 1
  valid whenever the variance sequence is summable with total alpha, where
  Psi collects the Gamma-function terms of the auxiliary output law and
  vanishes as SNR grows.

Lower bound (achievability with guard blocks and log-uniform magnitudes):

    C >= tau/(L+tau) * ( log log P^(1/tau) + Upsilon ),   P > 1,
    Upsilon = E log|H_1^(0)|^2 - 1 - 2 log( sqrt(alpha_0) + sqrt(alpha + 2 sigma2) ).

All values are in nats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .gains import GainModel, GainSpec, inf_h_minus_logalpha
from .profiles import Verdict, VarianceProfile, classify


class BoundError(ValueError):
    """Bound requested outside its validity region."""


# Lanczos approximation, g = 7, 9 coefficients. Relative error on Gamma is
# below 1e-13 over the right half plane, comfortably inside the 1e-10
# absolute contract for log Gamma on (0, 1].
_LANCZOS_G = 7.0
_LANCZOS_C = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


def log_gamma(x: float) -> float:
    """Natural log of the Gamma function for x > 0."""
    if not x > 0:
        raise BoundError(f"log_gamma requires a positive argument, got {x}")
    if x < 0.5:
        # shift into the accurate range via Gamma(x) = Gamma(x+1)/x
        return log_gamma(x + 1.0) - math.log(x)
    z = x - 1.0
    series = _LANCZOS_C[0]
    for i, c in enumerate(_LANCZOS_C[1:], start=1):
        series += c / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * math.log(t) - t + math.log(series)


def rho_tilde(rho: float, ell0: int, profile: VarianceProfile) -> float:
    """min{ rho^(ell0-1) alpha_{ell0} / max_{l' < ell0} alpha_{l'}, rho^ell0 }.

    The constant entering the SNR-independent upper bound; it satisfies
    0 < rho~ < 1 and rho~ * alpha_l <= alpha_{l+ell0} for every l.
    """
    if ell0 < 1:
        raise BoundError(f"shift index must be at least 1, got {ell0}")
    if not 0.0 < rho < 1.0:
        raise BoundError(f"ratio must lie in (0,1), got {rho}")
    a_ell0 = profile.alpha(ell0)
    if not a_ell0 > 0:
        raise BoundError(f"alpha_{ell0} must be positive")
    head_max = max(profile.alpha(l) for l in range(ell0))
    return min(rho ** (ell0 - 1) * a_ell0 / head_max, rho**ell0)


def upper_bound_exponential(profile: VarianceProfile, model: GainModel) -> float:
    """SNR-independent capacity ceiling for ratio-bounded profiles."""
    cls = classify(profile)
    if cls.verdict is not Verdict.BOUNDED:
        raise BoundError(
            "constant upper bound needs a certified ratio-bounded profile, "
            f"got verdict {cls.verdict.value}"
        )
    rt = rho_tilde(cls.rho, cls.ell0, profile)
    return math.log(2.0 * math.pi**2 / math.sqrt(rt)) - inf_h_minus_logalpha(profile, model)


def psi(snr: float, alpha: float) -> float:
    """Gamma-term remainder of the duality bound; tends to 0 as SNR grows.

    With xi = 1/(1 + log(1 + alpha snr)):
        Psi = log Gamma(xi) - log(1/xi) - xi log xi.
    """
    if snr < 0:
        raise BoundError(f"snr must be nonnegative, got {snr}")
    if not alpha > 0:
        raise BoundError(f"total variance must be positive, got {alpha}")
    xi = 1.0 / (1.0 + math.log1p(alpha * snr))
    return log_gamma(xi) + math.log(xi) - xi * math.log(xi)


def upper_bound_duality(snr: float, profile: VarianceProfile, model: GainModel) -> float:
    """Finite-SNR duality upper bound for summable profiles."""
    if not profile.summable:
        raise BoundError("duality bound needs a summable variance sequence")
    alpha = profile.total_sum()
    return (
        -inf_h_minus_logalpha(profile, model)
        + math.log1p(math.log1p(alpha * snr))
        + psi(snr, alpha)
        + math.log(math.pi)
        + 1.0
    )


def upsilon(alpha0: float, alpha: float, sigma2: float, e_log_h0_sq: float) -> float:
    """Upsilon = E log|H_1^(0)|^2 - 1 - 2 log(sqrt(alpha0) + sqrt(alpha + 2 sigma2))."""
    if not alpha0 > 0:
        raise BoundError(f"alpha0 must be positive, got {alpha0}")
    if alpha < alpha0:
        raise BoundError("total variance cannot be smaller than alpha0")
    if sigma2 < 0:
        raise BoundError(f"noise variance must be nonnegative, got {sigma2}")
    return e_log_h0_sq - 1.0 - 2.0 * math.log(math.sqrt(alpha0) + math.sqrt(alpha + 2.0 * sigma2))


def lower_bound_closed_form(P: float, sigma2: float, L: int, tau: int, ups: float) -> float:
    """tau/(L+tau) * (log log P^(1/tau) + Upsilon); may be negative (vacuous)."""
    if not P > 1.0:
        raise BoundError(f"power parameter must exceed 1, got {P}")
    if L < 1 or tau < 1:
        raise BoundError("guard length and symbol count must be positive")
    frac = tau / (L + tau)
    return frac * math.log(math.log(P) / tau) + frac * ups


def preloglog_lower(L: int, tau: int) -> float:
    """Achievable capacity pre-loglog tau/(L+tau); tends to 1 as tau grows."""
    if L < 0 or tau < 1:
        raise BoundError("need L >= 0 and tau >= 1")
    return tau / (L + tau)


def flat_fading_asymptote(alpha0: float, h0: float, e_log_h0_sq: float) -> float:
    """Single-path reference offset: lim (C - log log SNR) = log pi + E log|H|^2 - h_0."""
    if not alpha0 > 0:
        raise BoundError(f"alpha0 must be positive, got {alpha0}")
    return math.log(math.pi) + e_log_h0_sq - h0


@dataclass(frozen=True)
class BoundReport:
    """Every applicable bound value at one SNR point.

    Lower bounds are reported clamped at zero (capacity is nonnegative);
    the raw formula value is kept alongside for ordering checks. Fields
    that do not apply (e.g. the constant upper bound for an unbounded
    profile, or lower bounds at P <= 1) are None.
    """

    snr: float
    upper_exponential: float | None
    upper_duality: float
    lower_closed_form_raw: float | None
    lower_closed_form: float | None
    lower_mc: float | None
    lower_mc_stderr: float | None
    L_used: int | None
    tau_used: int | None
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.lower_closed_form is not None:
            uppers = [self.upper_duality]
            if self.upper_exponential is not None:
                uppers.append(self.upper_exponential)
            if self.lower_closed_form > min(uppers) + 1e-9:
                raise BoundError(
                    f"bound ordering violated at snr={self.snr}: "
                    f"lower {self.lower_closed_form} exceeds min upper {min(uppers)}"
                )

"""Stationary per-path gain process models.

Two zero-mean circularly-symmetric Gaussian models are provided: i.i.d.
(memoryless) and first-order Gauss-Markov. Gaussian models keep both
functionals required by the capacity bounds available in closed form:
the differential entropy rate h = log(pi e x innovation variance) and
E log|H|^2 = log(variance) - gamma. The bound interfaces only consume
these two numbers, so other models could be slotted in later.

Reproducibility: streams are derived from numpy SeedSequences built on
(seed, domain, index) tuples, so per-path draws are independent given
(seed, path index) and callable concurrently. Domain tags used across
the package: 0 = gain paths, 1 = channel noise, 2 = signaling blocks,
3 = Monte Carlo shards.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import lfilter

# Euler-Mascheroni constant, 20 significant digits (hard-coded, not computed).
EULER_GAMMA = 0.57721566490153286061

LOG_PI = math.log(math.pi)
LOG_PI_E = math.log(math.pi) + 1.0


class GainModelError(ValueError):
    """Invalid gain model parameter or query."""


@dataclass(frozen=True)
class MemorylessGaussian:
    """I.i.d. circularly-symmetric complex Gaussian gains."""


@dataclass(frozen=True)
class GaussMarkov:
    """First-order autoregressive gains H_k = a H_{k-1} + U_k, |a| < 1."""

    a: float

    def __post_init__(self):
        if not abs(self.a) < 1.0:
            raise GainModelError(f"correlation coefficient must satisfy |a| < 1, got {self.a}")


GainModel = MemorylessGaussian | GaussMarkov


@dataclass(frozen=True)
class GainSpec:
    """A gain model attached to one path's variance."""

    model: GainModel
    variance: float

    def __post_init__(self):
        if self.variance < 0:
            raise GainModelError(f"variance must be nonnegative, got {self.variance}")


def _innovation_variance(spec: GainSpec) -> float:
    if isinstance(spec.model, GaussMarkov):
        return spec.variance * (1.0 - abs(spec.model.a) ** 2)
    return spec.variance


def entropy_rate(spec: GainSpec) -> float:
    """Differential entropy rate of the gain process, in nats.

    For a stationary complex Gaussian process this is log(pi e) plus the
    log of the one-step innovation variance: the full variance for the
    memoryless model, variance * (1 - |a|^2) for Gauss-Markov.
    """
    if not spec.variance > 0:
        raise GainModelError("entropy rate undefined for a zero-variance path")
    return LOG_PI_E + math.log(_innovation_variance(spec))


def expected_log_sq(spec: GainSpec) -> float:
    """E log|H_1|^2 = log(variance) - gamma.

    The marginal of either Gaussian model is CN(0, variance), so |H|^2
    is exponential and its expected log is the log-mean minus Euler's
    constant.
    """
    if not spec.variance > 0:
        raise GainModelError("log moment undefined for a zero-variance path")
    return math.log(spec.variance) - EULER_GAMMA


def inf_h_minus_logalpha(profile, model: GainModel) -> float:
    """inf over active paths of (h_l - log alpha_l).

    With a single Gaussian model family across paths the difference is
    scale invariant, hence independent of the profile: log(pi e) for
    memoryless gains, log(pi e (1 - |a|^2)) for Gauss-Markov.
    """
    if not profile.alpha(0) > 0:
        raise GainModelError("profile must have a positive first path")
    if isinstance(model, GaussMarkov):
        return LOG_PI_E + math.log(1.0 - abs(model.a) ** 2)
    return LOG_PI_E


def _complex_normal(rng: np.random.Generator, n: int, variance: float) -> np.ndarray:
    # two independent real Gaussians of variance/2 per sample
    scale = math.sqrt(variance / 2.0)
    return scale * (rng.standard_normal(n) + 1j * rng.standard_normal(n))


def sample_path(spec: GainSpec, n: int, seed: int, stream: int = 0) -> np.ndarray:
    """Draw n consecutive gains of one path, deterministic given (seed, stream).

    Memoryless: i.i.d. CN(0, variance). Gauss-Markov: H_1 ~ CN(0, variance)
    followed by the AR(1) recursion with innovations CN(0, variance(1-|a|^2)),
    so the process is stationary from the first sample.
    """
    if n < 1:
        raise GainModelError(f"horizon must be at least 1, got {n}")
    if spec.variance == 0.0:
        return np.zeros(n, dtype=complex)
    rng = np.random.default_rng(np.random.SeedSequence([seed, 0, stream]))
    if isinstance(spec.model, GaussMarkov):
        a = spec.model.a
        x = np.empty(n, dtype=complex)
        x[0] = _complex_normal(rng, 1, spec.variance)[0]
        if n > 1:
            x[1:] = _complex_normal(rng, n - 1, _innovation_variance(spec))
        return lfilter([1.0], [1.0, -a], x)
    return _complex_normal(rng, n, spec.variance)

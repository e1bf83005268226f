"""Multipath channel simulator.

Output at time k (1-indexed) is the causal tapped-delay-line sum

    Y_k = sum_{l=0}^{k-1} H_k^(l) x_{k-l} + Z_k

with i.i.d. CN(0, sigma2) noise. There is no pre-history: early outputs
see fewer paths, exactly as the sum is written. Infinite profiles are
truncated at the smallest depth whose tail, driven at the peak input
power, stays below eps_trunc of the noise floor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .gains import GainModel, GainSpec, sample_path
from .profiles import FiniteProfile, TableProfile, VarianceProfile


class ChannelError(ValueError):
    """Invalid channel configuration or unsupported profile."""


@dataclass(frozen=True)
class ChannelConfig:
    sigma2: float
    eps_trunc: float = 1e-6
    seed: int = 0

    def __post_init__(self):
        if not self.sigma2 > 0:
            raise ChannelError(f"noise variance must be positive, got {self.sigma2}")
        if not 0.0 < self.eps_trunc <= 1e-3:
            raise ChannelError(f"truncation tolerance must lie in (0, 1e-3], got {self.eps_trunc}")


def truncation_depth(peak_power: float, profile: VarianceProfile, cfg: ChannelConfig) -> int:
    """Smallest depth L with tail_sum(L) * peak_power <= eps_trunc * sigma2.

    Finite profiles (and zero-tail tables) are never truncated: the full
    stored length is used.
    """
    if isinstance(profile, FiniteProfile):
        return len(profile.values) - 1
    if isinstance(profile, TableProfile) and profile.tail == "zero":
        return len(profile.values) - 1
    if not profile.summable:
        raise ChannelError("cannot simulate an infinite profile without a summable tail")
    if peak_power == 0.0:
        return 0
    budget = cfg.eps_trunc * cfg.sigma2
    depth = 0
    while profile.tail_sum(depth) * peak_power > budget:
        depth += 1
    return depth


def simulate(
    x: np.ndarray,
    profile: VarianceProfile,
    model: GainModel,
    cfg: ChannelConfig,
    return_parts: bool = False,
) -> np.ndarray:
    """Run the channel on an input sequence, deterministic given cfg.seed.

    Per-path gain streams are keyed by (seed, path index), so the fading
    realization does not depend on sigma2; the noise lives on its own
    stream and scales as sqrt(sigma2) times fixed unit draws. With
    return_parts=True, returns (interference, noise) with
    output = interference + noise.
    """
    x = np.asarray(x, dtype=complex)
    n = x.size
    if n < 1:
        raise ChannelError("input sequence must be nonempty")
    peak = float(np.max(np.abs(x) ** 2)) if n else 0.0
    depth = truncation_depth(peak, profile, cfg)

    interference = np.zeros(n, dtype=complex)
    if peak > 0.0:
        for ell in range(0, min(depth, n - 1) + 1):
            a = profile.alpha(ell)
            if a == 0.0:
                continue
            h = sample_path(GainSpec(model, a), n, cfg.seed, stream=ell)
            interference[ell:] += h[ell:] * x[: n - ell]

    rng = np.random.default_rng(np.random.SeedSequence([cfg.seed, 1]))
    unit = (rng.standard_normal(n) + 1j * rng.standard_normal(n)) / math.sqrt(2.0)
    noise = math.sqrt(cfg.sigma2) * unit
    if return_parts:
        return interference, noise
    return interference + noise


def theoretical_output_power(
    x: np.ndarray, profile: VarianceProfile, sigma2: float, k: int
) -> float:
    """E|Y_k|^2 = sigma2 + sum_{l=0}^{k-1} alpha_l |x_{k-l}|^2, k 1-indexed.

    Computed over the full history (no truncation), exact for the given
    input realization.
    """
    x = np.asarray(x, dtype=complex)
    if not 1 <= k <= x.size:
        raise ChannelError(f"time index must lie in 1..{x.size}, got {k}")
    total = float(sigma2)
    for ell in range(k):
        total += profile.alpha(ell) * float(np.abs(x[k - 1 - ell]) ** 2)
    return total

"""Block signaling with guard zeros and log-uniform magnitudes.

Inputs are i.i.d. blocks of length L + tau: L leading zeros flush the
inter-symbol interference, then tau data symbols whose squared magnitudes
are log-uniform on a ladder of adjacent intervals,

    log |X_nu|^2 ~ Uniform[ (nu-1)/tau * log P, nu/tau * log P ],

with phases uniform on [0, 2pi) independent of the magnitudes. The
scheme exists to evaluate mutual-information bounds, not to carry data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class SchemeError(ValueError):
    """Invalid scheme parameters."""


@dataclass(frozen=True)
class SignalingScheme:
    L: int
    tau: int
    P: float

    def __post_init__(self):
        if self.L < 0:
            raise SchemeError(f"guard length must be nonnegative, got {self.L}")
        if self.tau < 1:
            raise SchemeError(f"need at least one data symbol per block, got {self.tau}")
        if not self.P > 1.0:
            raise SchemeError(f"power parameter must exceed 1, got {self.P}")

    @property
    def block_len(self) -> int:
        return self.L + self.tau

    def magnitude_interval(self, nu: int) -> tuple[float, float]:
        """Support of |X_nu|^2: [P^((nu-1)/tau), P^(nu/tau)]."""
        self._check_nu(nu)
        lp = math.log(self.P)
        return math.exp((nu - 1) / self.tau * lp), math.exp(nu / self.tau * lp)

    def _check_nu(self, nu: int) -> None:
        if not 1 <= nu <= self.tau:
            raise SchemeError(f"symbol index must lie in 1..{self.tau}, got {nu}")


def sample_block(scheme: SignalingScheme, seed: int, b: int) -> np.ndarray:
    """Draw block b, deterministic given (seed, b); blocks are i.i.d. in b.

    Stream layout: tau magnitude uniforms first, then tau phase uniforms.
    """
    rng = np.random.default_rng(np.random.SeedSequence([seed, 2, b]))
    lp = math.log(scheme.P)
    nu = np.arange(1, scheme.tau + 1)
    u = rng.uniform(size=scheme.tau)
    log_sq = (nu - 1 + u) / scheme.tau * lp
    phase = rng.uniform(0.0, 2.0 * math.pi, size=scheme.tau)
    block = np.zeros(scheme.block_len, dtype=complex)
    block[scheme.L :] = np.exp(0.5 * log_sq) * np.exp(1j * phase)
    return block


def symbol_second_moment(scheme: SignalingScheme, nu: int) -> float:
    """E|X_nu|^2 = tau (P^(nu/tau) - P^((nu-1)/tau)) / log P.

    Expectation of the exponential of a uniform; written via expm1 so the
    degenerate limit P -> 1+ evaluates stably to 1.
    """
    scheme._check_nu(nu)
    lp = math.log(scheme.P)
    return math.exp((nu - 1) / scheme.tau * lp) * math.expm1(lp / scheme.tau) / (lp / scheme.tau)


def entropy_identity(scheme: SignalingScheme, nu: int) -> float:
    """h(X_nu) - E log|X_nu|^2 = log log P^(1/tau) + log pi.

    The differential entropy of a circularly-symmetric variable equals
    E log|X|^2 + h(log|X|^2) + log pi, and log|X_nu|^2 is uniform on an
    interval of length log P / tau, whose entropy is the log-length.
    """
    scheme._check_nu(nu)
    return math.log(math.log(scheme.P) / scheme.tau) + math.log(math.pi)

"""Path-gain variance profiles {alpha_l} and their decay classification.

The decay rate of the variance sequence decides the high-SNR behavior of
the channel: a ratio alpha_{l+1}/alpha_l bounded away from zero gives
bounded capacity, while faster-than-exponential decay (including finitely
many paths, with the convention 0/0 = 0) gives unbounded capacity.

All logs are natural; rates elsewhere in the package are in nats.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass


class ProfileError(ValueError):
    """Invalid profile construction or unsupported query."""


def _check_common(alpha0: float, values=None) -> None:
    if not alpha0 > 0:
        raise ProfileError(f"alpha_0 must be positive, got {alpha0}")
    if values is not None:
        if any(v < 0 for v in values):
            raise ProfileError("path variances must be nonnegative")
        if any(not math.isfinite(v) for v in values):
            raise ProfileError("path variances must be finite")


class VarianceProfile:
    """Common interface for the variance sequence of the path gains.

    Subclasses provide ``alpha`` and ``tail_sum``; everything else is
    shared. Instances are immutable and safe to share across workers.
    """

    summable: bool = True

    def alpha(self, ell: int) -> float:
        """Variance of path ``ell`` (exact for closed-form families)."""
        raise NotImplementedError

    def tail_sum(self, ell: int) -> float:
        """Sum of alpha_l over l > ell."""
        raise NotImplementedError

    def total_sum(self) -> float:
        """Sum of the whole sequence, alpha = alpha_0 + tail beyond 0."""
        return self.alpha(0) + self.tail_sum(0)


@dataclass(frozen=True)
class GeometricProfile(VarianceProfile):
    """alpha_l = alpha0 * rho**l for a ratio 0 < rho < 1."""

    rho: float
    alpha0: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.rho < 1.0:
            raise ProfileError(f"geometric ratio must lie in (0,1), got {self.rho}")
        _check_common(self.alpha0)

    def alpha(self, ell: int) -> float:
        if ell < 0:
            raise ProfileError("path index must be nonnegative")
        return self.alpha0 * self.rho**ell

    def tail_sum(self, ell: int) -> float:
        if ell < 0:
            raise ProfileError("path index must be nonnegative")
        return self.alpha0 * self.rho ** (ell + 1) / (1.0 - self.rho)


@dataclass(frozen=True)
class SuperExponentialProfile(VarianceProfile):
    """alpha_l = alpha0 * exp(-l**kappa) with kappa > 1.

    Tails are summed term by term; because the terms decay faster than
    geometrically, truncating when the next term drops below 1e-16 of
    the running sum leaves an error below the last kept term.
    """

    kappa: float
    alpha0: float = 1.0

    def __post_init__(self):
        if not self.kappa > 1.0:
            raise ProfileError(f"exponent must exceed 1, got {self.kappa}")
        _check_common(self.alpha0)

    def alpha(self, ell: int) -> float:
        if ell < 0:
            raise ProfileError("path index must be nonnegative")
        return self.alpha0 * math.exp(-float(ell) ** self.kappa)

    def tail_sum(self, ell: int) -> float:
        if ell < 0:
            raise ProfileError("path index must be nonnegative")
        acc = 0.0
        l = ell + 1
        while True:
            term = self.alpha(l)
            acc += term
            if term <= 1e-16 * acc or term == 0.0:
                return acc
            l += 1


@dataclass(frozen=True)
class FiniteProfile(VarianceProfile):
    """Finitely many paths: alpha_l = values[l] for l <= L, else 0."""

    values: tuple

    def __init__(self, values):
        object.__setattr__(self, "values", tuple(float(v) for v in values))
        if not self.values:
            raise ProfileError("need at least one path")
        _check_common(self.values[0], self.values)

    @property
    def alpha0(self) -> float:
        return self.values[0]

    def alpha(self, ell: int) -> float:
        if ell < 0:
            raise ProfileError("path index must be nonnegative")
        return self.values[ell] if ell < len(self.values) else 0.0

    def tail_sum(self, ell: int) -> float:
        if ell < 0:
            raise ProfileError("path index must be nonnegative")
        return float(sum(self.values[ell + 1 :]))


@dataclass(frozen=True)
class TableProfile(VarianceProfile):
    """User-supplied variance table with a declared tail behavior.

    Only the ``"zero"`` tail (no paths beyond the stored values) is
    supported. A table constructed with ``tail=None`` leaves the tail
    undeclared: queries beyond the stored length raise, tail sums are
    refused, and classification is Indeterminate.
    """

    values: tuple
    tail: str | None

    def __init__(self, values, tail: str | None = "zero"):
        object.__setattr__(self, "values", tuple(float(v) for v in values))
        object.__setattr__(self, "tail", tail)
        if not self.values:
            raise ProfileError("need at least one path")
        if tail not in (None, "zero"):
            raise ProfileError(f"unsupported tail tag {tail!r}; only 'zero' is supported")
        _check_common(self.values[0], self.values)

    @property
    def alpha0(self) -> float:
        return self.values[0]

    @property
    def summable(self) -> bool:
        return self.tail == "zero"

    def alpha(self, ell: int) -> float:
        if ell < 0:
            raise ProfileError("path index must be nonnegative")
        if ell < len(self.values):
            return self.values[ell]
        if self.tail == "zero":
            return 0.0
        raise ProfileError(
            f"table of length {len(self.values)} queried at {ell} with undeclared tail"
        )

    def tail_sum(self, ell: int) -> float:
        if self.tail != "zero":
            raise ProfileError("tail sum undefined for a table with undeclared tail")
        if ell < 0:
            raise ProfileError("path index must be nonnegative")
        return float(sum(self.values[ell + 1 :]))


class Verdict(enum.Enum):
    BOUNDED = "BoundedCapacity"
    UNBOUNDED = "UnboundedCapacity"
    INDETERMINATE = "Indeterminate"


@dataclass(frozen=True)
class Classification:
    """Decay-class verdict with its certifying witness.

    For BOUNDED the witness is the pair (rho, ell0) with
    alpha_{l+1}/alpha_l >= rho for all l >= ell0; for UNBOUNDED the
    witness is a tag naming the divergence mechanism.
    """

    verdict: Verdict
    rho: float | None = None
    ell0: int | None = None
    tag: str = ""


def classify(profile: VarianceProfile) -> Classification:
    """Decide bounded vs unbounded capacity from the family's closed form.

    Geometric ratios certify liminf alpha_{l+1}/alpha_l = rho > 0;
    super-exponential families certify (1/l) log(1/alpha_l) -> infinity,
    as do finite profiles (all-zero tails, ratio convention 0/0 = 0).
    Tables with an undeclared tail are refused rather than guessed from
    finitely many ratios.
    """
    if isinstance(profile, GeometricProfile):
        return Classification(Verdict.BOUNDED, rho=profile.rho, ell0=1,
                              tag="geometric ratio bounded below")
    if isinstance(profile, SuperExponentialProfile):
        return Classification(Verdict.UNBOUNDED, tag="super-exponential decay")
    if isinstance(profile, FiniteProfile):
        return Classification(Verdict.UNBOUNDED, tag="finite paths")
    if isinstance(profile, TableProfile):
        if profile.tail == "zero":
            return Classification(Verdict.UNBOUNDED, tag="finite paths")
        return Classification(Verdict.INDETERMINATE, tag="undeclared tail")
    raise ProfileError(f"unknown profile type {type(profile).__name__}")


def choose_L(profile: VarianceProfile, P: float, sigma2: float) -> int:
    """Smallest positive integer L with tail_sum(L) * P <= sigma2.

    Such an L always exists for summable profiles; located by doubling
    followed by bisection so the minimality clause holds exactly.
    """
    if not P > 0:
        raise ProfileError(f"power must be positive, got {P}")
    if not sigma2 > 0:
        raise ProfileError(f"noise variance must be positive, got {sigma2}")
    if not profile.summable:
        raise ProfileError("guard-length selection needs a summable profile")

    def ok(L):
        return profile.tail_sum(L) * P <= sigma2

    if ok(1):
        return 1
    lo, hi = 1, 2
    while not ok(hi):
        lo, hi = hi, hi * 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return hi


def choose_L_geometric(rho: float, P: float, sigma2: float) -> int:
    """Explicit guard length ceil(log(P/sigma2 * rho/(1-rho)) / log(1/rho)).

    For the unit geometric sequence alpha_l = rho**l this satisfies
    tail_sum(L) * P <= sigma2 by construction: the tail equals
    rho**L * rho/(1-rho). Clamped to at least 1 (enlarging L only
    shrinks the tail).
    """
    if not 0.0 < rho < 1.0:
        raise ProfileError(f"ratio must lie in (0,1), got {rho}")
    if not P > 0 or not sigma2 > 0:
        raise ProfileError("power and noise variance must be positive")
    raw = math.log(P / sigma2 * rho / (1.0 - rho)) / math.log(1.0 / rho)
    return max(1, math.ceil(raw))

"""Channel simulator: moments, determinism, truncation, noise separation."""

import math

import numpy as np
import pytest

from fadecap.channel import (
    ChannelConfig,
    ChannelError,
    simulate,
    theoretical_output_power,
    truncation_depth,
)
from fadecap.gains import GaussMarkov, MemorylessGaussian
from fadecap.profiles import FiniteProfile, GeometricProfile, TableProfile

N_BIG = 10**6


def test_config_validation():
    with pytest.raises(ChannelError):
        ChannelConfig(sigma2=0.0)
    with pytest.raises(ChannelError):
        ChannelConfig(sigma2=1.0, eps_trunc=0.01)


def test_zero_input_gives_pure_noise():
    cfg = ChannelConfig(sigma2=2.0, seed=21)
    y = simulate(np.zeros(N_BIG), GeometricProfile(rho=0.5), MemorylessGaussian(), cfg)
    assert abs(np.mean(np.abs(y) ** 2) - 2.0) / 2.0 < 0.01


def test_flat_fading_constant_input_power():
    cfg = ChannelConfig(sigma2=1.0, seed=22)
    c = 1.5
    x = np.full(N_BIG, c, dtype=complex)
    y = simulate(x, FiniteProfile([1.0]), MemorylessGaussian(), cfg)
    expected = c * c + 1.0
    assert abs(np.mean(np.abs(y) ** 2) - expected) / expected < 0.01


def test_geometric_constant_input_power():
    cfg = ChannelConfig(sigma2=1.0, seed=23)
    x = np.ones(N_BIG, dtype=complex)
    y = simulate(x, GeometricProfile(rho=0.5), MemorylessGaussian(), cfg)
    # sigma2 + sum of rho^l = 1 + 2
    assert abs(np.mean(np.abs(y) ** 2) - 3.0) / 3.0 < 0.01


def test_second_moment_matches_theoretical_output_power():
    cfg = ChannelConfig(sigma2=1.0, seed=24)
    x = np.ones(N_BIG, dtype=complex)
    prof = GeometricProfile(rho=0.5)
    y = simulate(x, prof, MemorylessGaussian(), cfg)
    theory = theoretical_output_power(x, prof, 1.0, 500)
    assert abs(np.mean(np.abs(y) ** 2) - theory) / theory < 0.01


def test_theoretical_output_power_examples():
    assert theoretical_output_power(np.zeros(10), FiniteProfile([1.0]), 2.0, 5) == 2.0
    got = theoretical_output_power(np.ones(2), FiniteProfile([1.0, 0.5]), 1.0, 2)
    assert got == pytest.approx(2.5, rel=1e-14)
    far = theoretical_output_power(np.ones(300), GeometricProfile(rho=0.5), 1.0, 300)
    assert far == pytest.approx(3.0, rel=1e-12)


def test_theoretical_output_power_index_range():
    with pytest.raises(ChannelError):
        theoretical_output_power(np.ones(5), FiniteProfile([1.0]), 1.0, 6)


def test_simulate_deterministic():
    cfg = ChannelConfig(sigma2=1.0, seed=25)
    x = np.exp(1j * np.linspace(0, 6.0, 2000))
    prof = GeometricProfile(rho=0.6)
    y1 = simulate(x, prof, GaussMarkov(0.8), cfg)
    y2 = simulate(x, prof, GaussMarkov(0.8), cfg)
    assert (y1 == y2).all()
    y3 = simulate(x, prof, GaussMarkov(0.8), ChannelConfig(sigma2=1.0, seed=26))
    assert not (y1 == y3).all()


def test_noise_scale_changes_only_noise_component_finite():
    x = np.ones(5000, dtype=complex)
    prof = FiniteProfile([1.0, 0.5, 0.25])
    i1, z1 = simulate(x, prof, MemorylessGaussian(), ChannelConfig(sigma2=1.0, seed=27),
                      return_parts=True)
    i2, z2 = simulate(x, prof, MemorylessGaussian(), ChannelConfig(sigma2=4.0, seed=27),
                      return_parts=True)
    assert (i1 == i2).all()
    assert (z2 == 2.0 * z1).all()


def test_noise_scale_changes_only_noise_component_geometric():
    # matched eps * sigma2 budgets keep the truncation depth identical
    x = np.ones(5000, dtype=complex)
    prof = GeometricProfile(rho=0.5)
    cfg1 = ChannelConfig(sigma2=1.0, eps_trunc=1e-3, seed=28)
    cfg2 = ChannelConfig(sigma2=4.0, eps_trunc=0.25e-3, seed=28)
    i1, z1 = simulate(x, prof, MemorylessGaussian(), cfg1, return_parts=True)
    i2, z2 = simulate(x, prof, MemorylessGaussian(), cfg2, return_parts=True)
    assert (i1 == i2).all()
    assert (z2 == 2.0 * z1).all()


def test_truncation_depth_rule():
    prof = GeometricProfile(rho=0.5)
    cfg = ChannelConfig(sigma2=1.0, eps_trunc=1e-3, seed=0)
    depth = truncation_depth(1.0, prof, cfg)
    assert prof.tail_sum(depth) <= 1e-3
    assert prof.tail_sum(depth - 1) > 1e-3
    assert truncation_depth(0.0, prof, cfg) == 0
    assert truncation_depth(123.0, FiniteProfile([1.0, 0.5]), cfg) == 1


def test_truncation_soundness_extra_paths_below_budget():
    # deepening the tap line by 10 paths moves the time-averaged power of
    # the difference by less than eps_trunc * sigma2
    n = 2 * 10**5
    x = np.ones(n, dtype=complex)
    prof = GeometricProfile(rho=0.6)
    cfg = ChannelConfig(sigma2=1.0, eps_trunc=1e-3, seed=29)
    depth = truncation_depth(1.0, prof, cfg)

    deeper = TableProfile(
        [prof.alpha(l) for l in range(depth + 11)], tail="zero"
    )
    base = TableProfile([prof.alpha(l) for l in range(depth + 1)], tail="zero")
    y1 = simulate(x, base, MemorylessGaussian(), cfg)
    y2 = simulate(x, deeper, MemorylessGaussian(), cfg)
    assert np.mean(np.abs(y2 - y1) ** 2) < cfg.eps_trunc * cfg.sigma2


def test_nonsummable_infinite_profile_rejected():
    t = TableProfile([1.0, 0.5], tail=None)
    with pytest.raises(ChannelError):
        simulate(np.ones(10), t, MemorylessGaussian(), ChannelConfig(sigma2=1.0))


def test_empty_input_rejected():
    with pytest.raises(ChannelError):
        simulate(np.zeros(0), FiniteProfile([1.0]), MemorylessGaussian(),
                 ChannelConfig(sigma2=1.0))

"""Variance profile families, classification, and guard-length selection."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fadecap.profiles import (
    FiniteProfile,
    GeometricProfile,
    ProfileError,
    SuperExponentialProfile,
    TableProfile,
    Verdict,
    choose_L,
    choose_L_geometric,
    classify,
)

INV_E = math.exp(-1.0)

# direct summation of exp(-l^2), frozen from a 50-digit evaluation
SUM_EXP_MINUS_L_SQ = 1.3863186024133261


def test_alpha_geometric_closed_form():
    p = GeometricProfile(rho=INV_E)
    assert p.alpha(3) == pytest.approx(math.exp(-3), rel=1e-14)


def test_alpha_finite_beyond_last_path():
    assert FiniteProfile([1.0, 0.5]).alpha(5) == 0.0


def test_alpha_superexponential_closed_form():
    p = SuperExponentialProfile(kappa=2)
    assert p.alpha(2) == pytest.approx(math.exp(-4), rel=1e-14)


def test_alpha_table_zero_tail_extends():
    assert TableProfile([1.0, 0.5], tail="zero").alpha(7) == 0.0


def test_alpha_table_undeclared_tail_refuses_long_queries():
    t = TableProfile([1.0, 0.5], tail=None)
    assert t.alpha(1) == 0.5
    with pytest.raises(ProfileError):
        t.alpha(2)


def test_invalid_profiles_rejected():
    with pytest.raises(ProfileError):
        GeometricProfile(rho=1.0)
    with pytest.raises(ProfileError):
        GeometricProfile(rho=0.5, alpha0=0.0)
    with pytest.raises(ProfileError):
        SuperExponentialProfile(kappa=1.0)
    with pytest.raises(ProfileError):
        FiniteProfile([0.0, 1.0])
    with pytest.raises(ProfileError):
        FiniteProfile([1.0, -0.5])
    with pytest.raises(ProfileError):
        TableProfile([1.0], tail="constant")


def test_tail_sum_geometric():
    assert GeometricProfile(rho=0.5).tail_sum(2) == pytest.approx(0.25, rel=1e-12)
    expected = INV_E / (1.0 - INV_E)
    assert GeometricProfile(rho=INV_E).tail_sum(0) == pytest.approx(expected, rel=1e-12)


def test_tail_sum_finite():
    assert FiniteProfile([1.0, 0.5]).tail_sum(1) == 0.0


def test_tail_sum_undeclared_table_errors():
    with pytest.raises(ProfileError):
        TableProfile([1.0, 0.5], tail=None).tail_sum(0)


def test_total_sum_examples():
    assert FiniteProfile([1.0, 0.5, 0.25]).total_sum() == pytest.approx(1.75, rel=1e-14)
    assert GeometricProfile(rho=0.5).total_sum() == pytest.approx(2.0, rel=1e-12)
    assert SuperExponentialProfile(kappa=2).total_sum() == pytest.approx(
        SUM_EXP_MINUS_L_SQ, rel=1e-12
    )


def test_total_sum_superexponential_direct_summation_oracle():
    # brute-force partial sums, independent of the tail routine
    brute = sum(math.exp(-float(l) ** 2) for l in range(40))
    assert SuperExponentialProfile(kappa=2).total_sum() == pytest.approx(brute, rel=1e-14)


def test_classify_geometric_bounded_with_witness():
    cls = classify(GeometricProfile(rho=INV_E))
    assert cls.verdict is Verdict.BOUNDED
    assert cls.rho == pytest.approx(INV_E)
    assert cls.ell0 == 1


def test_classify_superexponential_unbounded():
    assert classify(SuperExponentialProfile(kappa=2)).verdict is Verdict.UNBOUNDED


def test_classify_finite_unbounded():
    cls = classify(FiniteProfile([1.0]))
    assert cls.verdict is Verdict.UNBOUNDED
    assert cls.tag == "finite paths"


def test_classify_table_tags():
    assert classify(TableProfile([1.0, 0.5], tail="zero")).verdict is Verdict.UNBOUNDED
    assert classify(TableProfile([1.0, 0.5], tail=None)).verdict is Verdict.INDETERMINATE


def test_classify_trichotomy_closed_forms_never_indeterminate():
    for p in (
        GeometricProfile(rho=0.3),
        SuperExponentialProfile(kappa=1.5),
        FiniteProfile([2.0, 1.0]),
    ):
        assert classify(p).verdict is not Verdict.INDETERMINATE


def test_choose_L_geometric_formula_example():
    assert choose_L_geometric(0.5, 100.0, 1.0) == 7


def test_choose_L_finite_zero_tail():
    assert choose_L(FiniteProfile([1.0, 0.5]), 1e9, 1.0) == 1


def test_choose_L_geometric_profile_small_power():
    assert choose_L(GeometricProfile(rho=0.5), 1.0, 1.0) == 1


def test_choose_L_matches_explicit_formula_on_unit_geometric():
    for rho, P, s2 in [(0.5, 100.0, 1.0), (0.25, 1e7, 0.3), (0.9, 1e10, 2.0)]:
        assert choose_L(GeometricProfile(rho=rho), P, s2) == choose_L_geometric(rho, P, s2)


@settings(max_examples=80, deadline=None)
@given(
    rho=st.floats(min_value=0.01, max_value=0.95),
    alpha0=st.floats(min_value=0.1, max_value=10.0),
    ell=st.integers(min_value=0, max_value=200),
)
def test_tail_sum_recursion_geometric(rho, alpha0, ell):
    p = GeometricProfile(rho=rho, alpha0=alpha0)
    lhs = p.tail_sum(ell)
    rhs = p.tail_sum(ell + 1) + p.alpha(ell + 1)
    assert lhs == pytest.approx(rhs, rel=1e-12)


@settings(max_examples=40, deadline=None)
@given(
    kappa=st.floats(min_value=1.1, max_value=4.0),
    ell=st.integers(min_value=0, max_value=8),
)
def test_tail_sum_recursion_superexponential(kappa, ell):
    p = SuperExponentialProfile(kappa=kappa)
    assert p.tail_sum(ell) == pytest.approx(p.tail_sum(ell + 1) + p.alpha(ell + 1), rel=1e-12)


@settings(max_examples=100, deadline=None)
@given(
    rho=st.floats(min_value=1e-4, max_value=1.0 - 1e-4),
    log10_P=st.floats(min_value=0.0, max_value=12.0),
    log10_s2=st.floats(min_value=-6.0, max_value=3.0),
)
def test_choose_L_geometric_satisfies_guard_condition(rho, log10_P, log10_s2):
    P = 10.0**log10_P
    s2 = 10.0**log10_s2
    L = choose_L_geometric(rho, P, s2)
    assert L >= 1
    # unit geometric tail: rho^(L+1) / (1 - rho)
    tail = rho ** (L + 1) / (1.0 - rho)
    assert tail * P <= s2 * (1.0 + 1e-9)


@settings(max_examples=60, deadline=None)
@given(
    rho=st.floats(min_value=0.05, max_value=0.95),
    alpha0=st.floats(min_value=0.1, max_value=5.0),
    log10_P=st.floats(min_value=-2.0, max_value=10.0),
    log10_s2=st.floats(min_value=-4.0, max_value=2.0),
)
def test_choose_L_minimality(rho, alpha0, log10_P, log10_s2):
    p = GeometricProfile(rho=rho, alpha0=alpha0)
    P = 10.0**log10_P
    s2 = 10.0**log10_s2
    L = choose_L(p, P, s2)
    assert L >= 1
    assert p.tail_sum(L) * P <= s2
    if L > 1:
        assert p.tail_sum(L - 1) * P > s2


def test_bounded_witness_certifies_shifted_ratio_property():
    # rho~ * alpha_l <= alpha_{l + l0} along the sequence, for the witness (rho, 1)
    p = GeometricProfile(rho=INV_E)
    cls = classify(p)
    for ell in range(0, 1001, 37):
        assert cls.rho * p.alpha(ell) <= p.alpha(ell + cls.ell0) * (1.0 + 1e-12)

import math

import mpmath
import pytest
from hypothesis import assume, given, strategies as st

from subleading.analytic_engine import TaylorReport
from subleading.theorem import (
    EULER_GAMMA,
    LOG_2PI,
    PI,
    FieldInvariants,
    check_constants,
    gamma_estimate,
    pi_digits,
    predicted_ratio,
    sign_boundary,
    sign_threshold,
    verify_theorem,
)

mpmath.mp.dps = 40


def mp_rho(N, n=1, d=1):
    return n * (mpmath.euler + mpmath.log(2 * mpmath.pi)) - mpmath.log(N) / 2 - mpmath.log(d)


def report(a_r, a_r1):
    return TaylorReport(0, a_r, a_r1, 1.0, 0.0, 0.0)


def test_constants_against_mpmath():
    assert EULER_GAMMA == float(mpmath.euler)
    assert PI == float(mpmath.pi)
    assert LOG_2PI == float(mpmath.log(2 * mpmath.pi))


def test_constants_against_independent_recomputation():
    assert pi_digits(10) == "3.141592653"
    assert abs(gamma_estimate() - float(mpmath.euler)) < 1e-13
    assert all(v < 1e-12 for v in check_constants().values())


def test_ratio_conductor_11():
    rho = predicted_ratio(FieldInvariants(11))
    assert abs(rho - float(mp_rho(11))) < 1e-14
    assert abs(rho - 1.2161450949) < 1e-9


def test_ratio_quadratic_field():
    rho = predicted_ratio(FieldInvariants(1, degree=2, disc_K=-4))
    assert math.isclose(rho, 2 * (EULER_GAMMA + LOG_2PI) - math.log(4), rel_tol=1e-15)


@given(st.integers(1, 10**12), st.integers(1, 6), st.integers(1, 10**6))
def test_ratio_matches_mpmath(N, n, d):
    assume(n > 1 or d == 1)
    assert abs(predicted_ratio(FieldInvariants(N, n, d)) - float(mp_rho(N, n, d))) <= 1e-13 * max(1, abs(float(mp_rho(N, n, d))))


@given(st.integers(1, 10**9), st.integers(1, 10**9))
def test_ratio_decreasing_in_conductor(N1, N2):
    assume(N1 < N2)
    assert predicted_ratio(FieldInvariants(N1)) > predicted_ratio(FieldInvariants(N2))


@given(st.integers(1, 10**6), st.integers(2, 5), st.integers(1, 10**6), st.integers(1, 10**6))
def test_ratio_decreasing_in_discriminant(N, n, d1, d2):
    assume(d1 < d2)
    assert predicted_ratio(FieldInvariants(N, n, d1)) > predicted_ratio(FieldInvariants(N, n, d2))


@given(st.integers(1, 10**6), st.integers(2, 5), st.integers(1, 10**4))
def test_ratio_increasing_in_degree(N, n, d):
    assert predicted_ratio(FieldInvariants(N, n + 1, d)) > predicted_ratio(FieldInvariants(N, n, d))


def test_sign_threshold_over_Q():
    assert sign_threshold(1) == 126
    assert predicted_ratio(FieldInvariants(125)) > 0
    assert predicted_ratio(FieldInvariants(126)) < 0
    root = sign_boundary(1, 1)
    assert 125 < root < 126
    assert abs(root - float(mpmath.exp(2 * (mpmath.euler + mpmath.log(2 * mpmath.pi))))) < 1e-10


@given(st.integers(1, 10**6))
def test_sign_pattern_over_Q(N):
    assert (predicted_ratio(FieldInvariants(N)) < 0) == (N >= 126)


@given(st.integers(1, 8), st.integers(1, 10**5))
def test_threshold_is_first_negative(n, d):
    T = sign_threshold(n, d)
    assume(isinstance(T, int) and T < 10**15)
    rho = lambda N: float(mp_rho(N, n, d))  # noqa: E731
    assert rho(T) < 0
    assert T == 1 or rho(T - 1) >= 0


def test_threshold_huge_returns_expression():
    out = sign_threshold(300)
    assert isinstance(out, str) and out.startswith("ceil(exp(")
    with pytest.raises(ValueError):
        sign_threshold(0)


def test_field_invariants_validation():
    with pytest.raises(ValueError):
        FieldInvariants(11, degree=1, disc_K=5)
    with pytest.raises(ValueError):
        FieldInvariants(0)
    with pytest.raises(ValueError):
        FieldInvariants(1, degree=2, disc_K=0)


def test_verdict_exact_identity():
    rho = predicted_ratio(FieldInvariants(37))
    v = verify_theorem(report(0.3, 0.3 * rho), FieldInvariants(37))
    assert v.passed and v.rel_residual < 1e-15
    assert not v.sign_flip_predicted and not v.sign_flip_observed and v.sign_consistent


def test_verdict_sign_flip_large_conductor():
    rho = predicted_ratio(FieldInvariants(5077))
    assert rho < 0
    v = verify_theorem(report(1.7318499, 1.7318499 * rho), FieldInvariants(5077))
    assert v.sign_flip_predicted and v.sign_flip_observed and v.passed


def test_verdict_detects_perturbation():
    rho = predicted_ratio(FieldInvariants(11))
    v = verify_theorem(report(1.0, rho * (1 + 1e-5)), FieldInvariants(11), tol=1e-6)
    assert not v.passed


def test_verdict_absolute_near_zero_ratio():
    # A tiny rho switches the verdict to the absolute residual.
    inv = FieldInvariants(1, euler_gamma=-LOG_2PI + 1e-5)
    v = verify_theorem(report(1.0, 1e-5 + 5e-7), inv, tol=1e-6)
    assert v.passed and v.rel_residual > 1e-2


def test_verdict_rejects_zero_leading():
    with pytest.raises(ValueError):
        verify_theorem(report(0.0, 1.0), FieldInvariants(11))


def test_gamma_shift_is_detected():
    rho = predicted_ratio(FieldInvariants(11))
    shifted = FieldInvariants(11, euler_gamma=EULER_GAMMA + 1e-5)
    assert not verify_theorem(report(1.0, rho), shifted, tol=1e-6).passed

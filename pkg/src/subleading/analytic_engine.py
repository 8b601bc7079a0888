"""Completed L-function Lambda(s) = (sqrt(N)/2pi)^s Gamma(s) L(E,s) near s = 1.

Lambda is evaluated through the Mellin split at t0:

    Lambda(s) = sum_n a_n [ x_n^{-s} Gamma(s, x_n t0) + eps x_n^{s-2} Gamma(2-s, x_n/t0) ],
    x_n = 2 pi n / sqrt(N),

and its s-derivatives at s = 1 term by term, which brings in the kernels
E_j(y) = int_y^inf (ln t)^j e^{-t} dt.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .dirichlet_coefficients import CoefficientTable, choose_truncation, tail_bound
from .quadrature import log_power_exp_integrals, upper_incomplete_gamma
from .theorem import EULER_GAMMA

MAX_DERIVATIVE = 6
TAIL_TARGET = 1e-12
SIGN_TEST_T0 = (1.0, 1.3)
SIGN_TEST_S = (1.1, 0.9)


class AmbiguousSign(RuntimeError):
    code = "ambiguous-sign"


class RankNotResolved(RuntimeError):
    code = "rank-not-resolved"


class InsufficientCoefficients(ValueError):
    code = "insufficient-coefficients"


@dataclass(frozen=True)
class CompletedLParams:
    N: int
    epsilon: int
    M: int
    t0: float = 1.0
    quad_tol: float = 1e-13

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("conductor must be positive")
        if self.epsilon not in (1, -1):
            raise ValueError("epsilon must be +1 or -1")
        if not 0.5 <= self.t0 <= 2.0:
            raise ValueError("t0 must lie in [0.5, 2]")

    @property
    def B(self) -> float:
        return math.sqrt(self.N) / (2 * math.pi)

    def with_(self, **changes) -> "CompletedLParams":
        return CompletedLParams(**{**self.__dict__, **changes})


@dataclass(frozen=True)
class LambdaDerivatives:
    values: np.ndarray  # Lambda^(k)(1), k = 0..K
    epsilon: int
    tail_error: float
    quad_error: float
    M: int

    @property
    def K(self) -> int:
        return len(self.values) - 1

    @property
    def budget(self) -> float:
        return self.tail_error + self.quad_error


@dataclass(frozen=True)
class TaylorReport:
    r: int
    a_r: float
    a_r1: float
    f1: float
    fprime1: float
    residual: float
    extras: dict = field(default_factory=dict, compare=False)


def _x(N: int, M: int) -> np.ndarray:
    return 2 * math.pi * np.arange(1, M + 1) / math.sqrt(N)


def _coeffs(coeffs: CoefficientTable, M: int) -> np.ndarray:
    if coeffs.M < M:
        raise InsufficientCoefficients(f"need {M} coefficients, table has {coeffs.M}")
    return coeffs.a[1 : M + 1].astype(float)


def truncation_for(N: int, t0: float = 1.0) -> int:
    return choose_truncation(N, TAIL_TARGET, t0)


def afe_halves(N: int, coeffs: CoefficientTable, M: int, s: float, t0: float, tol: float = 1e-13):
    """The two Mellin halves of Lambda(s), before the sign is applied.

    Returns (first, second, error) with Lambda(s) = first + eps * second.
    """
    if not 0.0 <= s <= 2.0:
        raise ValueError("s must lie in [0, 2]")
    a = _coeffs(coeffs, M)
    x = _x(N, M)
    ys = np.concatenate([x * t0, x / t0])
    g, gerr = upper_incomplete_gamma([s, 2.0 - s], ys, tol)
    w1 = a * x ** (-s)
    w2 = a * x ** (s - 2.0)
    first = math.fsum(w1 * g[0, :M])
    second = math.fsum(w2 * g[1, M:])
    err = float(np.abs(w1) @ gerr[:M] + np.abs(w2) @ gerr[M:])
    err += 4 * np.finfo(float).eps * float(np.abs(w1 * g[0, :M]).sum() + np.abs(w2 * g[1, M:]).sum())
    return first, second, err + tail_bound(M, N, t0)


def lambda_at(params: CompletedLParams, coeffs: CoefficientTable, s: float) -> float:
    """Lambda(s) for real s in [0, 2]."""
    first, second, _ = afe_halves(params.N, coeffs, params.M, s, params.t0, params.quad_tol)
    return first + params.epsilon * second


def lambda_derivatives(params: CompletedLParams, coeffs: CoefficientTable, K: int = MAX_DERIVATIVE) -> LambdaDerivatives:
    """Lambda^(k)(1) for k = 0..K by differentiating the split series term-wise."""
    if not 0 <= K <= MAX_DERIVATIVE:
        raise ValueError(f"derivative order must be in 0..{MAX_DERIVATIVE}")
    M, t0, eps = params.M, params.t0, params.epsilon
    a = _coeffs(coeffs, M)
    x = _x(params.N, M)
    lx = np.log(x)
    if t0 == 1.0:
        E, Eerr = log_power_exp_integrals(K, x, params.quad_tol)
        E1, E2, err1, err2 = E, E, Eerr, Eerr
    else:
        E, Eerr = log_power_exp_integrals(K, np.concatenate([x * t0, x / t0]), params.quad_tol)
        E1, E2, err1, err2 = E[:, :M], E[:, M:], Eerr[:M], Eerr[M:]
    w = a / x
    values = np.zeros(K + 1)
    quad_err = 0.0
    for k in range(K + 1):
        terms = np.zeros(M)
        bound = np.zeros(M)
        for j in range(k + 1):
            c = math.comb(k, j)
            p1 = (-lx) ** (k - j)
            p2 = eps * (-1) ** j * lx ** (k - j)
            terms += c * (p1 * E1[j] + p2 * E2[j])
            bound += c * np.abs(lx) ** (k - j) * (err1 + err2)
        values[k] = math.fsum(w * terms)
        mag = float(np.abs(w * terms).sum())
        quad_err = max(quad_err, float(np.abs(w) @ bound) + 4 * np.finfo(float).eps * mag)
    tail = _derivative_tail(params.N, M, t0, K)
    return LambdaDerivatives(values, eps, tail, quad_err, M)


def _derivative_tail(N: int, M: int, t0: float, K: int) -> float:
    # Omitted terms: |a_n| <= n^0.6 sqrt(n); kernel <= (1 + |ln x|)^K 2^K e^{-x m} / x.
    m = min(t0, 1 / t0)
    c = 2 * math.pi / math.sqrt(N)
    total = 0.0
    for n in range(M + 1, 4 * M + 200):
        x = c * n
        term = 2 * n**1.1 * (1 + abs(math.log(x))) ** K * 2**K * math.exp(-x * m) / x
        total += term
        if term < 1e-30:
            break
    return total


def lambda_derivative(params: CompletedLParams, coeffs: CoefficientTable, k: int) -> float:
    return float(lambda_derivatives(params, coeffs, k).values[k])


def detect_sign(N: int, coeffs: CoefficientTable, override: int | None = None, tol: float = 1e-13):
    """Root number from t0-invariance of the split series.

    Returns (epsilon, discrepancies) where discrepancies maps each candidate
    sign to its worst t0-mismatch relative to the error budget.
    """
    if override is not None:
        if override not in (1, -1):
            raise ValueError("sign override must be +1 or -1")
        return override, {}
    M = truncation_for(N, max(SIGN_TEST_T0))
    mismatch = {1: 0.0, -1: 0.0}
    for s in SIGN_TEST_S:
        runs = [afe_halves(N, coeffs, M, s, t0, tol) for t0 in SIGN_TEST_T0]
        budget = sum(r[2] for r in runs)
        for eps in (1, -1):
            vals = [r[0] + eps * r[1] for r in runs]
            mismatch[eps] = max(mismatch[eps], abs(vals[0] - vals[1]) / budget)
    passing = [eps for eps in (1, -1) if mismatch[eps] <= 10.0]
    if len(passing) != 1:
        raise AmbiguousSign(
            "t0-invariance does not single out a sign: "
            f"mismatch/budget = {mismatch[1]:.3g} for +1, {mismatch[-1]:.3g} for -1"
        )
    return passing[0], mismatch


def analytic_rank(derivs: LambdaDerivatives, scale_tol: float = 1e-5) -> int:
    """Smallest k of the right parity with |Lambda^(k)(1)| above the noise scale."""
    vals = np.abs(derivs.values)
    threshold = scale_tol * max(1.0, float(vals.max()))
    start = 0 if derivs.epsilon == 1 else 1
    for k in range(start, derivs.K + 1, 2):
        if vals[k] > threshold:
            return k
    raise RankNotResolved(
        f"all derivatives of order <= {derivs.K} with parity of eps={derivs.epsilon} "
        f"fall below {threshold:.3g}"
    )


def f_and_fprime(B: float, n: int = 1) -> tuple[float, float]:
    """f(1) and f'(1) for f(s) = B^s Gamma(s)^n."""
    if B <= 0 or n < 1:
        raise ValueError("need B > 0 and n >= 1")
    return B, B * (math.log(B) - n * EULER_GAMMA)


def taylor_of_L(derivs: LambdaDerivatives, f1: float, fprime1: float, r: int) -> TaylorReport:
    """a_r and a_{r+1} of L(E, s) at s = 1 from Lambda^(r)(1) and Lambda^(r+1)(1)."""
    if r + 1 > derivs.K:
        raise RankNotResolved(f"need Lambda^({r + 1})(1) but only {derivs.K} derivatives computed")
    lam_r = float(derivs.values[r])
    lam_r1 = float(derivs.values[r + 1])
    a_r = lam_r / (math.factorial(r) * f1)
    a_r1 = (lam_r1 - (r + 1) * fprime1 * math.factorial(r) * a_r) / (f1 * math.factorial(r + 1))
    residual = abs(lam_r1) / (f1 * math.factorial(r) * abs(a_r))
    return TaylorReport(r, a_r, a_r1, f1, fprime1, residual)


@dataclass(frozen=True)
class Analysis:
    params: CompletedLParams
    derivs: LambdaDerivatives
    report: TaylorReport
    sign_mismatch: dict


def analyze(N: int, coeffs: CoefficientTable, epsilon: int | None = None, t0: float = 1.0,
            K: int = MAX_DERIVATIVE, scale_tol: float = 1e-5) -> Analysis:
    """Sign, rank and the two leading Taylor coefficients of L at s = 1."""
    eps, mismatch = detect_sign(N, coeffs, epsilon)
    params = CompletedLParams(N, eps, truncation_for(N, t0), t0)
    derivs = lambda_derivatives(params, coeffs, K)
    r = analytic_rank(derivs, scale_tol)
    f1, fp1 = f_and_fprime(params.B)
    return Analysis(params, derivs, taylor_of_L(derivs, f1, fp1, r), mismatch)

"""Closed-form ratio a_{r+1}/a_r = n(gamma + log 2pi) - log(N)/2 - log|disc_K|."""
from __future__ import annotations

import math
from dataclasses import dataclass

EULER_GAMMA = 0.57721566490153286061
PI = 3.14159265358979323846
LOG_2PI = 1.83787706640934548356

# |rho| below this switches the verdict to an absolute residual.
SMALL_RHO = 1e-3


@dataclass(frozen=True)
class FieldInvariants:
    conductor_norm: int
    degree: int = 1
    disc_K: int = 1
    euler_gamma: float = EULER_GAMMA

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError("degree must be >= 1")
        if self.conductor_norm < 1:
            raise ValueError("conductor norm must be >= 1")
        if self.disc_K == 0:
            raise ValueError("field discriminant must be nonzero")
        if self.degree == 1 and abs(self.disc_K) != 1:
            raise ValueError("Q has discriminant 1")


@dataclass(frozen=True)
class TheoremVerdict:
    rho: float
    measured: float
    abs_residual: float
    rel_residual: float
    tolerance: float
    passed: bool
    sign_flip_predicted: bool  # rho < 0
    sign_flip_observed: bool  # sign(a_{r+1}) == -sign(a_r)

    @property
    def sign_consistent(self) -> bool:
        return self.sign_flip_predicted == self.sign_flip_observed


def predicted_ratio(inv: FieldInvariants) -> float:
    return (
        inv.degree * (inv.euler_gamma + LOG_2PI)
        - 0.5 * math.log(inv.conductor_norm)
        - math.log(abs(inv.disc_K))
    )


def sign_boundary_log(n: int, abs_disc: int) -> float:
    """log of the real N at which the ratio vanishes."""
    return 2 * n * (EULER_GAMMA + LOG_2PI) - 2 * math.log(abs_disc)


def sign_boundary(n: int, abs_disc: int) -> float:
    return math.exp(sign_boundary_log(n, abs_disc))


def sign_threshold(n: int, abs_disc: int = 1) -> int | str:
    """Smallest conductor norm N >= 1 for which the predicted ratio is negative.

    For boundaries beyond double range a string ``"ceil(exp(L))"`` is returned.
    """
    if n < 1 or abs_disc < 1:
        raise ValueError("need n >= 1 and |disc| >= 1")
    log_root = sign_boundary_log(n, abs_disc)
    if log_root > 700:
        return f"ceil(exp({log_root!r}))"
    N = max(1, math.floor(math.exp(log_root)))

    def rho(m):
        return n * (EULER_GAMMA + LOG_2PI) - 0.5 * math.log(m) - math.log(abs_disc)

    while N > 1 and rho(N - 1) < 0:
        N -= 1
    while rho(N) >= 0:
        N += 1
    return N


def verify_theorem(report, inv: FieldInvariants, tol: float = 1e-6) -> TheoremVerdict:
    """Compare a_{r+1}/a_r from a TaylorReport with the predicted ratio."""
    if report.a_r == 0:
        raise ValueError("leading coefficient is zero")
    rho = predicted_ratio(inv)
    measured = report.a_r1 / report.a_r
    abs_res = abs(measured - rho)
    rel_res = abs_res / abs(rho) if rho != 0 else math.inf
    passed = abs_res <= tol if abs(rho) < SMALL_RHO else rel_res <= tol
    return TheoremVerdict(
        rho, measured, abs_res, rel_res, tol, passed,
        sign_flip_predicted=rho < 0,
        sign_flip_observed=(report.a_r1 > 0) != (report.a_r > 0),
    )


# ---------------------------------------------------------------------------
# Diagnostics for the stored constants.


def pi_digits(count: int) -> str:
    """First ``count`` decimal digits of pi from Gibbons' unbounded spigot."""
    q, r, t, k, m, x = 1, 0, 1, 1, 3, 3
    out = []
    while len(out) < count:
        if 4 * q + r - t < m * t:
            out.append(str(m))
            q, r, m = 10 * q, 10 * (r - m * t), (10 * (3 * q + r)) // t - 10 * m
        else:
            q, r, t, k, m, x = q * k, (2 * q + r) * x, t * x, k + 1, (q * (7 * k + 2) + r * x) // (t * x), x + 2
    return out[0] + "." + "".join(out[1:])


def gamma_estimate(n: int = 10_000) -> float:
    """H_n - log n with Euler-Maclaurin corrections through n^-6."""
    h = math.fsum(1 / k for k in range(1, n + 1))
    return h - math.log(n) - 1 / (2 * n) + 1 / (12 * n**2) - 1 / (120 * n**4) + 1 / (252 * n**6)


def check_constants() -> dict[str, float]:
    """Discrepancies between stored constants and independent recomputation."""
    spigot_pi = float(pi_digits(21))
    return {
        "pi": abs(spigot_pi - PI),
        "log_2pi": abs(math.log(2 * spigot_pi) - LOG_2PI),
        "euler_gamma": abs(gamma_estimate() - EULER_GAMMA),
    }

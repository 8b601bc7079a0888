"""Embedded invariant suites run by ``subleading selftest``."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache

from . import analytic_engine as ae
from .curve_model import SingularCurve, WeierstrassCurve, conductor, minimal_model
from .dirichlet_coefficients import ap_good, count_points_naive, curve_coefficients, primes_up_to
from .fixtures import CATALOG, FixtureCurve
from .quadrature import log_power_exp_integral
from .theorem import EULER_GAMMA, PI, FieldInvariants, check_constants, predicted_ratio, verify_theorem

SYMMETRY_T = (0.05, 0.1, 0.2, 0.3)
SYMMETRY_TOL = 1e-9
T0_ALT = 1.25
T0_TOL = 1e-8
FD_STEPS = (0.02, 0.01)
FD_TOL = 1e-6
PARITY_TOL = 1e-8
THEOREM_TOL = 1e-6
SPECIAL_VALUE_TOL = 1e-8


@dataclass
class SuiteResult:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class Prepared:
    fixture: FixtureCurve
    N: int
    coeffs: object
    epsilon: int


@lru_cache(maxsize=None)
def prepare(label: str, wrong_sign: bool = False) -> Prepared:
    fx = next(f for f in CATALOG if f.label == label)
    model = minimal_model(fx.curve).curve
    cond = conductor(model)
    M = ae.truncation_for(cond.value, max(ae.SIGN_TEST_T0))
    coeffs = curve_coefficients(model, M, cond.local)
    eps, _ = ae.detect_sign(cond.value, coeffs)
    return Prepared(fx, cond.value, coeffs, -eps if wrong_sign else eps)


def _params(p: Prepared, t0: float = 1.0) -> ae.CompletedLParams:
    return ae.CompletedLParams(p.N, p.epsilon, ae.truncation_for(p.N, t0), t0)


def finite_difference(params, coeffs, k: int, h: float) -> float:
    """Central difference of order k with O(h^2) error."""
    L = lambda s: ae.lambda_at(params, coeffs, s)  # noqa: E731
    if k == 1:
        return (L(1 + h) - L(1 - h)) / (2 * h)
    if k == 2:
        return (L(1 + h) - 2 * L(1) + L(1 - h)) / h**2
    if k == 3:
        return (L(1 + 2 * h) - 2 * L(1 + h) + 2 * L(1 - h) - L(1 - 2 * h)) / (2 * h**3)
    raise ValueError("finite differences implemented for k = 1, 2, 3")


def richardson_derivative(params, coeffs, k: int) -> float:
    coarse, fine = (finite_difference(params, coeffs, k, h) for h in FD_STEPS)
    return (4 * fine - coarse) / 3


def random_curves(count: int, seed: int, bound: int = 30):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        a = [rng.randint(-1, 1), rng.randint(-1, 1), rng.randint(-1, 1),
             rng.randint(-bound, bound), rng.randint(-bound, bound)]
        try:
            out.append(WeierstrassCurve(*a))
        except SingularCurve:
            continue
    return out


def random_ap_pairs(count: int = 50, seed: int = 2024, pmax: int = 500):
    rng = random.Random(seed)
    primes = primes_up_to(pmax)
    pairs = []
    for E in random_curves(4 * count, seed):
        p = rng.choice(primes)
        if E.disc % p:
            pairs.append((E, p))
        if len(pairs) == count:
            break
    return pairs


# ---------------------------------------------------------------------------


def suite_constants(**_):
    d = check_constants()
    ok = all(v < 1e-12 for v in d.values())
    return ok, ", ".join(f"{k}={v:.1e}" for k, v in d.items())


def suite_conductor(**_):
    bad = [fx.label for fx in CATALOG if conductor(fx.curve).value != fx.conductor]
    return not bad, f"{len(CATALOG) - len(bad)}/{len(CATALOG)} conductors match" + (f"; wrong: {bad}" if bad else "")


def suite_ap_oracle(**_):
    pairs = random_ap_pairs()
    bad = [(str(E), p) for E, p in pairs if ap_good(E, p) != p + 1 - count_points_naive(E, p)]
    return not bad, f"{len(pairs) - len(bad)}/{len(pairs)} (curve, p) pairs agree"


def suite_sign_and_rank(wrong_sign=False, **_):
    bad = []
    for fx in CATALOG:
        p = prepare(fx.label, wrong_sign)
        if p.epsilon != fx.root_number:
            bad.append(fx.label)
            continue
        d = ae.lambda_derivatives(_params(p), p.coeffs)
        if ae.analytic_rank(d) != fx.rank:
            bad.append(fx.label)
    return not bad, f"{len(CATALOG) - len(bad)}/{len(CATALOG)} signs and ranks" + (f"; wrong: {bad}" if bad else "")


def suite_afe_symmetry(wrong_sign=False, **_):
    worst = 0.0
    for fx in CATALOG:
        p = prepare(fx.label, wrong_sign)
        for t0 in (1.0, 1.2):
            P = _params(p, t0)
            for t in SYMMETRY_T:
                hi, lo = ae.lambda_at(P, p.coeffs, 1 + t), ae.lambda_at(P, p.coeffs, 1 - t)
                worst = max(worst, abs(hi - p.epsilon * lo) / max(1.0, abs(hi)))
    return worst <= SYMMETRY_TOL, f"max relative asymmetry {worst:.2e} (tol {SYMMETRY_TOL:g})"


def suite_t0_invariance(wrong_sign=False, **_):
    worst = 0.0
    for fx in CATALOG:
        p = prepare(fx.label, wrong_sign)
        a = ae.lambda_derivatives(_params(p, 1.0), p.coeffs, 4).values
        b = ae.lambda_derivatives(_params(p, T0_ALT), p.coeffs, 4).values
        worst = max(worst, max(abs(x - y) / max(1.0, abs(x)) for x, y in zip(a, b)))
    return worst <= T0_TOL, f"max relative t0 drift {worst:.2e} (tol {T0_TOL:g})"


def suite_derivative_consistency(wrong_sign=False, **_):
    worst = 0.0
    for fx in CATALOG:
        p = prepare(fx.label, wrong_sign)
        P = _params(p)
        d = ae.lambda_derivatives(P, p.coeffs, 3).values
        for k in (1, 2, 3):
            worst = max(worst, abs(richardson_derivative(P, p.coeffs, k) - d[k]) / max(1.0, abs(d[k])))
    return worst <= FD_TOL, f"max relative term-wise vs finite-difference gap {worst:.2e} (tol {FD_TOL:g})"


def suite_parity(wrong_sign=False, **_):
    worst = 0.0
    for fx in CATALOG:
        p = prepare(fx.label, wrong_sign)
        for t0 in (1.0, T0_ALT):
            d = ae.lambda_derivatives(_params(p, t0), p.coeffs)
            odd = 0 if p.epsilon == -1 else 1
            worst = max(worst, max(abs(d.values[k]) for k in range(odd, d.K + 1, 2)))
    return worst <= PARITY_TOL, f"max wrong-parity |Lambda^(k)(1)| {worst:.2e} (tol {PARITY_TOL:g})"


def suite_quadrature(**_):
    e1 = abs(log_power_exp_integral(1, 0.0) + EULER_GAMMA)
    e2 = abs(log_power_exp_integral(2, 0.0) - (EULER_GAMMA**2 + PI**2 / 6))
    ok = e1 <= 1e-10 and e2 <= 1e-10
    return ok, f"|E_1(0)+gamma|={e1:.1e}, |E_2(0)-gamma^2-pi^2/6|={e2:.1e}"


def suite_special_values(wrong_sign=False, **_):
    worst, n = 0.0, 0
    for fx in CATALOG:
        if fx.special_value is None:
            continue
        p = prepare(fx.label, wrong_sign)
        res = ae.analyze(p.N, p.coeffs, p.epsilon)
        worst = max(worst, abs(res.report.a_r - fx.special_value))
        n += 1
    return worst <= SPECIAL_VALUE_TOL, f"{n} published leading coefficients, max error {worst:.2e}"


def suite_theorem_residual(gamma_shift=0.0, wrong_sign=False, **_):
    worst, failed = 0.0, []
    for fx in CATALOG:
        p = prepare(fx.label, wrong_sign)
        res = ae.analyze(p.N, p.coeffs, p.epsilon)
        inv = FieldInvariants(p.N, euler_gamma=EULER_GAMMA + gamma_shift)
        v = verify_theorem(res.report, inv, THEOREM_TOL)
        worst = max(worst, v.rel_residual)
        if not v.passed:
            failed.append(fx.label)
    return not failed, f"max relative residual {worst:.2e} (tol {THEOREM_TOL:g})" + (f"; failing: {failed}" if failed else "")


def suite_cross_module(**_):
    rng = random.Random(7)
    worst = 0.0
    for _trial in range(100):
        N = rng.randint(1, 10**7)
        f1, fp1 = ae.f_and_fprime(math.sqrt(N) / (2 * math.pi))
        worst = max(worst, abs(predicted_ratio(FieldInvariants(N)) + fp1 / f1))
    return worst <= 1e-13, f"max |rho + f'(1)/f(1)| {worst:.1e} over 100 conductors"


SUITES = {
    "constants": suite_constants,
    "conductor": suite_conductor,
    "ap-oracle": suite_ap_oracle,
    "quadrature": suite_quadrature,
    "sign-and-rank": suite_sign_and_rank,
    "afe-symmetry": suite_afe_symmetry,
    "t0-invariance": suite_t0_invariance,
    "derivative-consistency": suite_derivative_consistency,
    "parity": suite_parity,
    "special-values": suite_special_values,
    "theorem-residual": suite_theorem_residual,
    "cross-module": suite_cross_module,
}


def run_selftest(gamma_shift: float = 0.0, wrong_sign: bool = False, only=None) -> list[SuiteResult]:
    results = []
    for name, fn in SUITES.items():
        if only and name not in only:
            continue
        try:
            ok, detail = fn(gamma_shift=gamma_shift, wrong_sign=wrong_sign)
        except Exception as exc:  # a crashing suite counts as a failure
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(SuiteResult(name, bool(ok), detail))
    return results


def scoreboard(results: list[SuiteResult]) -> str:
    width = max(len(r.name) for r in results)
    lines = [f"{'PASS' if r.passed else 'FAIL'}  {r.name:<{width}}  {r.detail}" for r in results]
    lines.append(f"{sum(r.passed for r in results)}/{len(results)} suites passed")
    return "\n".join(lines)

"""Curve or coefficient file -> Taylor coefficients at s = 1 -> theorem verdict."""
from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field

from . import analytic_engine as ae
from .curve_model import WeierstrassCurve, conductor, minimal_model
from .dirichlet_coefficients import CoefficientTable, curve_coefficients
from .factor import factorint
from .theorem import FieldInvariants, TheoremVerdict, verify_theorem

DEFAULT_TOL = 1e-6


@dataclass
class AnalysisRequest:
    curve: WeierstrassCurve | None = None
    coeff_file: str | None = None
    conductor_override: int | None = None
    sign_override: int | None = None
    digits: int = 10
    t0: float = 1.0
    max_derivative: int = ae.MAX_DERIVATIVE
    tolerance: float = DEFAULT_TOL

    def __post_init__(self):
        if (self.curve is None) == (self.coeff_file is None):
            raise ValueError("give exactly one of a curve or a coefficient file")
        if self.coeff_file is not None and (self.conductor_override is None or self.sign_override is None):
            raise ValueError("coefficient-file mode needs both a conductor and a sign")
        if self.sign_override not in (None, 1, -1):
            raise ValueError("sign must be +1 or -1")
        if not 1 <= self.digits <= 17:
            raise ValueError("digits must be between 1 and 17")


@dataclass
class AnalysisReport:
    source: dict
    conductor: int
    conductor_factorization: list
    epsilon: int
    sign_source: str
    rank: int
    a_r: float
    a_r1: float
    f1: float
    fprime1: float
    lambda_derivatives: list
    verdict: TheoremVerdict
    error_budget: dict
    timings: dict = field(default_factory=dict)

    def to_dict(self, digits: int = 10, timings: bool = False) -> dict:
        v = self.verdict
        out = {
            "source": self.source,
            "conductor": self.conductor,
            "conductor_factorization": self.conductor_factorization,
            "epsilon": self.epsilon,
            "sign_source": self.sign_source,
            "rank": self.rank,
            "a_r": self.a_r,
            "a_r1": self.a_r1,
            "f1": self.f1,
            "fprime1": self.fprime1,
            "lambda_derivatives": self.lambda_derivatives,
            "theorem": {
                "rho": v.rho,
                "measured_ratio": v.measured,
                "abs_residual": v.abs_residual,
                "rel_residual": v.rel_residual,
                "tolerance": v.tolerance,
                "pass": v.passed,
                "sign_flip_predicted": v.sign_flip_predicted,
                "sign_flip_observed": v.sign_flip_observed,
            },
            "error_budget": self.error_budget,
        }
        if timings:
            out["timings"] = self.timings
        return _round_floats(out, digits)

    def to_json(self, digits: int = 10, timings: bool = False) -> str:
        return json.dumps(self.to_dict(digits, timings), sort_keys=True, indent=2)

    @property
    def passed(self) -> bool:
        return self.verdict.passed


def _round_floats(obj, digits):
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return str(obj)
        return float(f"{obj:.{digits}g}")
    if isinstance(obj, dict):
        return {k: _round_floats(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v, digits) for v in obj]
    return obj


def _finish(N, coeffs, request, source, factorization, timings, t_start) -> AnalysisReport:
    t = time.perf_counter()
    result = ae.analyze(N, coeffs, request.sign_override, request.t0, request.max_derivative)
    timings["analytic"] = time.perf_counter() - t
    rep = result.report
    verdict = verify_theorem(rep, FieldInvariants(N), request.tolerance)
    timings["total"] = time.perf_counter() - t_start
    d = result.derivs
    return AnalysisReport(
        source=source,
        conductor=N,
        conductor_factorization=[list(pe) for pe in factorization],
        epsilon=result.params.epsilon,
        sign_source="override" if request.sign_override is not None else "detected",
        rank=rep.r,
        a_r=rep.a_r,
        a_r1=rep.a_r1,
        f1=rep.f1,
        fprime1=rep.fprime1,
        lambda_derivatives=[float(x) for x in d.values],
        verdict=verdict,
        error_budget={
            "terms": d.M,
            "t0": result.params.t0,
            "tail": d.tail_error,
            "quadrature": d.quad_error,
            "parity_residual": rep.residual,
        },
        timings=timings,
    )


def analyze_curve(request: AnalysisRequest) -> AnalysisReport:
    t_start = time.perf_counter()
    timings = {}
    curve = request.curve
    mm = minimal_model(curve)
    cond = conductor(mm.curve)
    N = request.conductor_override or cond.value
    timings["arithmetic"] = time.perf_counter() - t_start
    M = ae.truncation_for(N, max(max(ae.SIGN_TEST_T0), request.t0, 1 / request.t0))
    t = time.perf_counter()
    coeffs = curve_coefficients(mm.curve, M, cond.local)
    timings["coefficients"] = time.perf_counter() - t
    source = {
        "mode": "curve",
        "curve": list(curve.ainvs),
        "minimal_model": list(mm.curve.ainvs),
        "transform": list(mm.transform),
        "local_data": [
            {"p": ld.p, "kind": ld.kind.value, "exponent": ld.exponent, "kodaira": ld.kodaira}
            for ld in cond.local
        ],
    }
    fact = cond.factorization if request.conductor_override is None else tuple(factorint(N).items())
    return _finish(N, coeffs, request, source, fact, timings, t_start)


def analyze_coefficients(request: AnalysisRequest) -> AnalysisReport:
    t_start = time.perf_counter()
    coeffs = CoefficientTable.from_file(request.coeff_file)
    N = request.conductor_override
    fact = tuple(factorint(N).items())
    source = {"mode": "coefficients", "coefficient_count": coeffs.M}
    return _finish(N, coeffs, request, source, fact, {}, t_start)


def run(request: AnalysisRequest) -> AnalysisReport:
    if request.curve is not None:
        return analyze_curve(request)
    return analyze_coefficients(request)

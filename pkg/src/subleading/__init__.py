"""Taylor coefficients of elliptic-curve L-functions at s = 1 and the
closed-form relation between the leading and sub-leading ones."""
from .analytic_engine import (
    AmbiguousSign,
    CompletedLParams,
    LambdaDerivatives,
    RankNotResolved,
    TaylorReport,
    analytic_rank,
    analyze,
    detect_sign,
    f_and_fprime,
    lambda_at,
    lambda_derivative,
    lambda_derivatives,
    taylor_of_L,
)
from .curve_model import (
    Conductor,
    LocalData,
    MinimalModel,
    NotMinimalAtP,
    ReductionKind,
    SingularCurve,
    WeierstrassCurve,
    conductor,
    derive_invariants,
    minimal_model,
    tate_local,
)
from .dirichlet_coefficients import (
    CoefficientTable,
    ap_good,
    choose_truncation,
    curve_coefficients,
    extend_multiplicative,
)
from .quadrature import log_power_exp_integral
from .theorem import FieldInvariants, TheoremVerdict, predicted_ratio, sign_threshold, verify_theorem

__version__ = "0.1.0"

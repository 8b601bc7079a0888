"""Adaptive Gauss-Kronrod quadrature for the incomplete-gamma kernels.

Everything here is vectorized over many intervals at once: the L-series sums
need the same kernel at hundreds of abscissae, so the integrals from each y
to infinity are assembled from one shared set of segments
y_(1) < y_(2) < ... < T and suffix sums over them.
"""
from __future__ import annotations

import math

import numpy as np

# 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK values).
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
GAUSS_WEIGHTS = np.zeros(15)
GAUSS_WEIGHTS[[1, 3, 5]] = _WG[:3]
GAUSS_WEIGHTS[[13, 11, 9]] = _WG[:3]
GAUSS_WEIGHTS[7] = _WG[3]

_EPS = np.finfo(float).eps


class QuadratureNonConvergence(RuntimeError):
    code = "quadrature-nonconvergence"


def gauss_kronrod(f, a, b, tol, max_depth: int = 60):
    """Integrate a vector-valued f over each [a_i, b_i] by adaptive bisection.

    ``f`` maps an array of abscissae of shape (q, 15) to values of shape
    (J, q, 15). Interval i is accepted once its Kronrod/Gauss discrepancy,
    maximized over the J components, is below its share of ``tol[i]`` (or at
    the round-off floor). Returns (integrals (J, m), error estimates (m,)).
    """
    a = np.atleast_1d(np.asarray(a, dtype=float))
    b = np.atleast_1d(np.asarray(b, dtype=float))
    tol = np.broadcast_to(np.asarray(tol, dtype=float), a.shape).copy()
    owner = np.arange(a.size)
    total = None
    errors = np.zeros(a.size)
    for _ in range(max_depth):
        if owner.size == 0:
            return total, errors
        half = 0.5 * (b - a)
        mid = 0.5 * (b + a)
        t = mid[:, None] + half[:, None] * NODES[None, :]
        vals = f(t)
        kron = (vals @ KRONROD_WEIGHTS) * half
        gauss = (vals @ GAUSS_WEIGHTS) * half
        resabs = (np.abs(vals) @ KRONROD_WEIGHTS) * np.abs(half)
        if total is None:
            total = np.zeros((vals.shape[0], errors.size))
        err = np.max(np.abs(kron - gauss), axis=0)
        floor = 50 * _EPS * np.max(resabs, axis=0)
        done = (err <= tol) | (err <= floor)
        if np.any(done):
            np.add.at(total, (slice(None), owner[done]), kron[:, done])
            np.add.at(errors, owner[done], np.minimum(err[done], np.maximum(tol[done], floor[done])))
        keep = ~done
        a, b, mid, tol, owner = a[keep], b[keep], mid[keep], tol[keep], owner[keep]
        a, b = np.concatenate([a, mid]), np.concatenate([mid, b])
        tol = np.concatenate([tol, tol]) * 0.5
        owner = np.concatenate([owner, owner])
    if owner.size:
        raise QuadratureNonConvergence(
            f"{owner.size} subintervals unresolved after {max_depth} bisections"
        )
    return total, errors


def _cutoff(ymax: float) -> float:
    return ymax + 40.0 * max(1.0, math.log(2.0 + ymax))


def _upper_integrals(kernel, ys: np.ndarray, tol: float):
    # Integrals of kernel over [y, T] for every positive y, plus per-y error.
    uniq, inverse = np.unique(ys, return_inverse=True)
    T = _cutoff(float(uniq[-1]))
    pts = np.append(uniq, T)
    lengths = np.diff(pts)
    share = tol * lengths / (T - pts[0])
    seg, seg_err = gauss_kronrod(kernel, pts[:-1], pts[1:], share)
    suffix = np.cumsum(seg[:, ::-1], axis=1)[:, ::-1]
    suffix_err = np.cumsum(seg_err[::-1])[::-1]
    return suffix[:, inverse], suffix_err[inverse], T


def _log_powers(jmax: int):
    def kernel(t):
        out = np.empty((jmax + 1,) + t.shape)
        out[0] = np.exp(-t)
        lt = np.log(t)
        for j in range(1, jmax + 1):
            out[j] = out[j - 1] * lt
        return out

    return kernel


def _log_power_head(jmax: int, h: float) -> np.ndarray:
    # int_0^h (ln t)^j e^{-t} dt from the power series of e^{-t}.
    lh = math.log(h)
    out = np.zeros(jmax + 1)
    for j in range(jmax + 1):
        acc, m, coef = 0.0, 0, 1.0  # coef = (-1)^m / m!
        while True:
            k = m + 1
            inner = sum(
                (-1) ** (j - i) * math.factorial(j) / math.factorial(i) * lh**i / k ** (j - i + 1)
                for i in range(j + 1)
            )
            term = coef * h**k * inner
            acc += term
            if m > 5 and abs(term) < 1e-18 * max(1.0, abs(acc)):
                break
            m += 1
            coef = -coef / m
        out[j] = acc
    return out


_HEAD_SPLIT = 0.5


def log_power_exp_integrals(jmax: int, ys, tol: float = 1e-13):
    """E_j(y) = int_y^inf (ln t)^j e^{-t} dt for j = 0..jmax and every y.

    Returns (values, errors): values has shape (jmax+1, len(ys)); errors is
    the absolute error bound per y (quadrature estimate plus cut-off tail).
    E_0 is the closed form e^{-y}. y = 0 is handled by an analytic head on
    [0, 1/2].
    """
    ys = np.atleast_1d(np.asarray(ys, dtype=float))
    if np.any(ys < 0):
        raise ValueError("y must be non-negative")
    if tol <= 0:
        raise ValueError("tol must be positive")
    zero = ys == 0
    work = np.where(zero, _HEAD_SPLIT, ys)
    vals, errs, T = _upper_integrals(_log_powers(jmax), work, tol)
    lT = math.log(T)
    tail = max(lT**j * math.exp(-T) * (1 + j / lT) for j in range(jmax + 1))
    errs = errs + tail
    if np.any(zero):
        vals[:, zero] += _log_power_head(jmax, _HEAD_SPLIT)[:, None]
    vals[0] = np.exp(-ys)
    return vals, errs


def log_power_exp_integral(j: int, y: float, tol: float = 1e-13) -> float:
    """Scalar E_j(y)."""
    if j < 0:
        raise ValueError("j must be non-negative")
    if j == 0:
        return math.exp(-y)
    vals, _ = log_power_exp_integrals(j, [y], tol)
    return float(vals[j, 0])


def upper_incomplete_gamma(s_values, ys, tol: float = 1e-13):
    """Gamma(s, y) = int_y^inf t^{s-1} e^{-t} dt for each s in s_values and y > 0.

    Returns (values (len(s_values), len(ys)), errors (len(ys),)).
    """
    s_values = np.atleast_1d(np.asarray(s_values, dtype=float))
    ys = np.atleast_1d(np.asarray(ys, dtype=float))
    if np.any(ys <= 0):
        raise ValueError("y must be positive")
    sm1 = (s_values - 1.0)[:, None, None]

    def kernel(t):
        return np.exp(sm1 * np.log(t)[None] - t[None])

    vals, errs, T = _upper_integrals(kernel, ys, tol)
    smax = float(np.max(s_values))
    tail = 2.0 * T ** (smax - 1) * math.exp(-T) if smax - 1 <= T / 2 else math.inf
    return vals, errs + tail

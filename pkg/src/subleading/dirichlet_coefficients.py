"""Dirichlet coefficients a_n of L(E, s) up to a truncation M."""
from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .curve_model import LocalData, ReductionKind, WeierstrassCurve, bad_local_data


class BadReductionPrime(ValueError):
    code = "bad-reduction-prime"


class MissingPrime(ValueError):
    code = "missing-prime"


@dataclass(frozen=True)
class CoefficientTable:
    """a[n] for 1 <= n <= M; index 0 is unused and held at 0."""

    M: int
    a: np.ndarray
    source: str = "curve-derived"

    def __post_init__(self):
        a = np.asarray(self.a, dtype=np.int64)
        if a.shape != (self.M + 1,):
            raise ValueError(f"expected {self.M + 1} entries (index 0 unused), got {a.shape}")
        if self.M >= 1 and a[1] != 1:
            raise ValueError("a[1] must be 1")
        a.setflags(write=False)
        object.__setattr__(self, "a", a)

    def __getitem__(self, n):
        return self.a[n]

    def __len__(self):
        return self.M

    def truncated(self, M: int) -> "CoefficientTable":
        if M > self.M:
            raise ValueError(f"table holds {self.M} coefficients, {M} requested")
        return CoefficientTable(M, self.a[: M + 1].copy(), self.source)

    @classmethod
    def from_file(cls, path) -> "CoefficientTable":
        """One integer per line, line n holding a_n; blank lines and '#' comments skipped."""
        values = []
        for line in Path(path).read_text().splitlines():
            line = line.split("#", 1)[0].strip()
            if line:
                values.append(int(line))
        return cls(len(values), np.array([0] + values, dtype=np.int64), "user-supplied")

    def to_file(self, path) -> None:
        Path(path).write_text("".join(f"{int(v)}\n" for v in self.a[1:]))


def prime_sieve(M: int) -> np.ndarray:
    """Smallest-prime-factor table spf[0..M] (spf[n] = n for primes)."""
    spf = np.arange(M + 1, dtype=np.int64)
    for p in range(2, math.isqrt(M) + 1):
        if spf[p] == p:
            block = spf[p * p :: p]
            mask = block == np.arange(p * p, M + 1, p)
            block[mask] = p
    return spf


def primes_up_to(M: int) -> list[int]:
    if M < 2:
        return []
    spf = prime_sieve(M)
    return [int(n) for n in np.nonzero(spf[2:] == np.arange(2, M + 1))[0] + 2]


def _legendre_many(values: np.ndarray, p: int) -> np.ndarray:
    # Euler's criterion v^((p-1)/2) mod p, vectorized square-and-multiply.
    base = values % p
    result = np.ones_like(base)
    e = (p - 1) // 2
    while e:
        if e & 1:
            result = result * base % p
        base = base * base % p
        e >>= 1
    return np.where(result == p - 1, -1, result)


def count_points_naive(curve: WeierstrassCurve, p: int) -> int:
    """#E(F_p) by checking every (x, y) in F_p^2, plus the point at infinity."""
    a1, a2, a3, a4, a6 = (c % p for c in curve.ainvs)
    x = np.arange(p, dtype=np.int64)[:, None]
    y = np.arange(p, dtype=np.int64)[None, :]
    lhs = (y * y + a1 * x * y + a3 * y) % p
    rhs = (((x + a2) * x % p + a4) * x + a6) % p
    return int(np.count_nonzero(lhs == rhs)) + 1


def ap_good(curve: WeierstrassCurve, p: int) -> int:
    """a_p = p + 1 - #E(F_p) at a prime of good reduction."""
    if curve.disc % p == 0:
        raise BadReductionPrime(f"p={p} divides the discriminant")
    if p <= 3:
        return p + 1 - count_points_naive(curve, p)
    # y^2 = x^3 - 27 c4 x - 54 c6 is isomorphic to E over F_p for p > 3.
    A = (-27 * curve.c4) % p
    Bc = (-54 * curve.c6) % p
    x = np.arange(p, dtype=np.int64)
    f = ((x * x % p + A) * x + Bc) % p
    return -int(_legendre_many(f, p).sum())


def extend_multiplicative(
    local_aps: dict[int, int], bad_data: list[LocalData], M: int
) -> CoefficientTable:
    """Expand prime coefficients into a[1..M] via the Euler product."""
    bad = {ld.p: ld.bad_ap for ld in bad_data if ld.kind is not ReductionKind.GOOD}
    spf = prime_sieve(max(M, 1))
    a = np.zeros(M + 1, dtype=np.int64)
    if M >= 1:
        a[1] = 1
    for p in primes_up_to(M):
        if p in bad:
            ap, good = bad[p], False
        elif p in local_aps:
            ap, good = local_aps[p], True
        else:
            raise MissingPrime(f"no a_p supplied for p={p}")
        prev, cur, q = 1, ap, p
        while q <= M:
            a[q] = cur
            prev, cur = cur, (ap * cur - p * prev) if good else ap * cur
            q *= p
    for n in range(2, M + 1):
        p = int(spf[n])
        if p == n:
            continue
        m, q = n, 1
        while m % p == 0:
            m //= p
            q *= p
        if m > 1:
            a[n] = a[q] * a[m]
    return CoefficientTable(M, a)


def curve_coefficients(curve: WeierstrassCurve, M: int, local=None) -> CoefficientTable:
    """Coefficient table for a minimal model (``local`` = its bad LocalData)."""
    if local is None:
        local = bad_local_data(curve)
    badp = {ld.p for ld in local if ld.kind is not ReductionKind.GOOD}
    aps = {p: ap_good(curve, p) for p in primes_up_to(M) if p not in badp}
    return extend_multiplicative(aps, list(local), M)


def _tail(M: int, N: int, t0: float) -> float:
    c = 2 * math.pi * min(t0, 1 / t0) / math.sqrt(N)
    total, n = 0.0, M + 1
    while True:
        term = 2.0 * n**1.1 * math.exp(-c * n)
        total += term
        q = ((n + 1) / n) ** 1.1 * math.exp(-c)
        if q < 1:
            # Past the peak the term ratio only shrinks: geometric majorant.
            rest = term * q / (1 - q)
            if rest <= 1e-6 * total or total == 0.0:
                return total + rest
        n += 1


def tail_bound(M: int, N: int, t0: float = 1.0) -> float:
    """Upper estimate of sum_{n>M} 2 d(n) sqrt(n) exp(-2 pi n min(t0,1/t0)/sqrt(N))."""
    return _tail(M, N, t0)


def choose_truncation(N: int, target_abs_error: float, t0: float = 1.0) -> int:
    """Smallest M with tail_bound(M) below target, doubled for safety."""
    if target_abs_error <= 0 or t0 <= 0:
        raise ValueError("target_abs_error and t0 must be positive")
    lo, hi = 1, 2
    while _tail(hi, N, t0) >= target_abs_error:
        lo, hi = hi, hi * 2
    while lo < hi:
        mid = (lo + hi) // 2
        if _tail(mid, N, t0) < target_abs_error:
            hi = mid
        else:
            lo = mid + 1
    return 2 * lo

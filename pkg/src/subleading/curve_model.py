"""Integral Weierstrass models over Q: invariants, minimal models, Tate's
algorithm and the conductor."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .factor import factorint, prime_divisors, valuation


class SingularCurve(ValueError):
    code = "singular-curve"


class NotMinimalAtP(ValueError):
    code = "not-minimal"

    def __init__(self, p: int):
        super().__init__(f"model is not minimal at p={p}")
        self.p = p


@dataclass(frozen=True)
class WeierstrassCurve:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with integer coefficients."""

    a1: int
    a2: int
    a3: int
    a4: int
    a6: int
    b2: int = field(init=False, repr=False, compare=False)
    b4: int = field(init=False, repr=False, compare=False)
    b6: int = field(init=False, repr=False, compare=False)
    b8: int = field(init=False, repr=False, compare=False)
    c4: int = field(init=False, repr=False, compare=False)
    c6: int = field(init=False, repr=False, compare=False)
    disc: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        inv = derive_invariants(self.a1, self.a2, self.a3, self.a4, self.a6)
        for name, value in zip(("b2", "b4", "b6", "b8", "c4", "c6", "disc"), inv):
            object.__setattr__(self, name, value)

    @property
    def ainvs(self) -> tuple[int, int, int, int, int]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @classmethod
    def parse(cls, text: str) -> "WeierstrassCurve":
        """Parse ``"a1,a2,a3,a4,a6"`` (brackets and spaces tolerated)."""
        parts = [p for p in text.strip().strip("[]()").replace(" ", "").split(",") if p]
        if len(parts) != 5:
            raise ValueError(f"expected 5 comma-separated integers, got {text!r}")
        return cls(*(int(p) for p in parts))

    def transform(self, u, r, s, t) -> "WeierstrassCurve":
        """Apply x = u^2 x' + r, y = u^3 y' + s u^2 x' + t."""
        a1, a2, a3, a4, a6 = self.ainvs
        n1 = a1 + 2 * s
        n2 = a2 - s * a1 + 3 * r - s * s
        n3 = a3 + r * a1 + 2 * t
        n4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t
        n6 = a6 + r * a4 + r * r * a2 + r**3 - t * a3 - t * t - r * t * a1
        u = Fraction(u)
        new = [Fraction(v) / u**k for v, k in zip((n1, n2, n3, n4, n6), (1, 2, 3, 4, 6))]
        if any(v.denominator != 1 for v in new):
            raise ValueError("change of variables does not give an integral model")
        return WeierstrassCurve(*(int(v) for v in new))

    def __str__(self) -> str:
        return "[" + ",".join(str(a) for a in self.ainvs) + "]"


def derive_invariants(a1, a2, a3, a4, a6):
    """Return (b2, b4, b6, b8, c4, c6, disc); raises SingularCurve if disc = 0."""
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    c4 = b2 * b2 - 24 * b4
    c6 = -(b2**3) + 36 * b2 * b4 - 216 * b6
    disc = -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    if disc == 0:
        raise SingularCurve(f"curve [{a1},{a2},{a3},{a4},{a6}] is singular")
    return b2, b4, b6, b8, c4, c6, disc


# ---------------------------------------------------------------------------
# Minimal models


@dataclass(frozen=True)
class MinimalModel:
    curve: WeierstrassCurve
    transform: tuple[int, int, int, int]  # (u, r, s, t) taking the input model here


def _kraus_ok(c4: int, c6: int, p: int) -> bool:
    # Local condition for (c4, c6) to come from a model integral at p.
    if p == 3:
        return c6 == 0 or valuation(c6, 3) != 2
    if p == 2:
        if c6 % 4 == 3:
            return True
        return (c4 == 0 or valuation(c4, 2) >= 4) and c6 % 32 in (0, 8)
    return True


def _vmin(n: int, p: int) -> float:
    return math.inf if n == 0 else valuation(n, p)


def _model_from_c4c6(c4: int, c6: int) -> WeierstrassCurve:
    b2 = (-c6) % 12
    if b2 > 6:
        b2 -= 12
    b4, r4 = divmod(b2 * b2 - c4, 24)
    b6, r6 = divmod(-(b2**3) + 36 * b2 * b4 - c6, 216)
    if r4 or r6:
        raise ArithmeticError("c4, c6 fail the integrality conditions")
    a1 = b2 % 2
    a3 = b6 % 2
    a2 = (b2 - a1) // 4
    a4 = (b4 - a1 * a3) // 2
    a6 = (b6 - a3) // 4
    return WeierstrassCurve(a1, a2, a3, a4, a6)


def _transform_between(src: WeierstrassCurve, dst: WeierstrassCurve, u: int):
    a1, a2, a3 = src.a1, src.a2, src.a3
    s = Fraction(u * dst.a1 - a1, 2)
    r = (u * u * dst.a2 - a2 + s * a1 + s * s) / 3
    t = (u**3 * dst.a3 - a3 - r * a1) / 2
    return (u, r, s, t)


def minimal_model(curve: WeierstrassCurve) -> MinimalModel:
    """Global minimal model over Q with a1, a3 in {0,1}, a2 in {-1,0,1}."""
    c4, c6, disc = curve.c4, curve.c6, curve.disc
    u = 1
    for p in prime_divisors(math.gcd(disc, c4, c6)):
        d = valuation(disc, p) // 12
        d = min(d, _vmin(c4, p) // 4, _vmin(c6, p) // 6)
        d = int(d)
        while d > 0 and not _kraus_ok(c4 // p ** (4 * d), c6 // p ** (6 * d), p):
            d -= 1
        u *= p**d
    model = _model_from_c4c6(c4 // u**4, c6 // u**6)
    _, r, s, t = _transform_between(curve, model, u)
    if any(Fraction(v).denominator != 1 for v in (r, s, t)):
        raise ArithmeticError("non-integral transform to minimal model")
    transform = (u, int(r), int(s), int(t))
    if curve.transform(*transform) != model:
        raise ArithmeticError("minimal-model transform does not reproduce the model")
    return MinimalModel(model, transform)


# ---------------------------------------------------------------------------
# Local reduction data


class ReductionKind(str, enum.Enum):
    GOOD = "good"
    SPLIT = "split-multiplicative"
    NONSPLIT = "nonsplit-multiplicative"
    ADDITIVE = "additive"


@dataclass(frozen=True)
class LocalData:
    p: int
    kind: ReductionKind
    exponent: int
    bad_ap: int | None
    kodaira: str | None = None

    def __post_init__(self):
        if (self.exponent == 0) != (self.kind is ReductionKind.GOOD):
            raise ValueError("exponent 0 iff good reduction")
        multiplicative = self.kind in (ReductionKind.SPLIT, ReductionKind.NONSPLIT)
        if (self.exponent == 1) != multiplicative:
            raise ValueError("exponent 1 iff multiplicative reduction")
        limit = {2: 8, 3: 5}.get(self.p, 2)
        if self.exponent > limit:
            raise ValueError(f"conductor exponent {self.exponent} too large at p={self.p}")


def _pdiv(x: int, p: int) -> bool:
    return x % p == 0


def _pval(x: int, p: int) -> float:
    return _vmin(x, p)


def _inv(a: int, p: int) -> int:
    return pow(a % p, -1, p)


def _has_root_mod_p(a: int, b: int, c: int, p: int) -> bool:
    # a T^2 + b T + c has a root in F_p
    if p == 2:
        return any((a * x * x + b * x + c) % 2 == 0 for x in (0, 1))
    a, b, c = a % p, b % p, c % p
    if a == 0:
        return b != 0 or c == 0
    d = (b * b - 4 * a * c) % p
    return d == 0 or pow(d, (p - 1) // 2, p) == 1


def _rst(curve: WeierstrassCurve, r=0, s=0, t=0) -> WeierstrassCurve:
    return curve.transform(1, r, s, t)


def tate_full(curve: WeierstrassCurve, p: int) -> LocalData:
    """Tate's algorithm at p, step by step.

    Raises NotMinimalAtP instead of rescaling when the model is not minimal.
    """
    C = curve
    nD = valuation(C.disc, p)
    if nD == 0:
        return LocalData(p, ReductionKind.GOOD, 0, None, "I0")

    # Move the singular point to (0, 0).
    if p == 2:
        if _pdiv(C.b2, 2):
            r = C.a4 % 2
            t = (r * (1 + C.a2 + C.a4) + C.a6) % 2
        else:
            r = C.a3 % 2
            t = (r + C.a4) % 2
    elif p == 3:
        r = (-C.b6) % 3 if _pdiv(C.b2, 3) else (-C.b2 * C.b4) % 3
        t = (C.a1 * r + C.a3) % 3
    else:
        if _pdiv(C.c4, p):
            r = (-_inv(12, p) * C.b2) % p
        else:
            r = (-_inv(12 * C.c4, p) * (C.c6 + C.b2 * C.c4)) % p
        t = (-_inv(2, p) * (C.a1 * r + C.a3)) % p
    C = _rst(C, r, 0, t)

    if not _pdiv(C.c4, p):
        split = _has_root_mod_p(1, C.a1, -C.a2, p)
        kind = ReductionKind.SPLIT if split else ReductionKind.NONSPLIT
        return LocalData(p, kind, 1, 1 if split else -1, f"I{nD}")
    if _pval(C.a6, p) < 2:
        return LocalData(p, ReductionKind.ADDITIVE, nD, 0, "II")
    if _pval(C.b8, p) < 3:
        return LocalData(p, ReductionKind.ADDITIVE, nD - 1, 0, "III")
    if _pval(C.b6, p) < 3:
        return LocalData(p, ReductionKind.ADDITIVE, nD - 2, 0, "IV")

    # Arrange p | a1, a2; p^2 | a3, a4; p^3 | a6.
    if p == 2:
        s = C.a2 % 2
        t = 2 * ((C.a6 // 4) % 2)
    else:
        # t only matters mod p^2 here, so it is not reduced.
        s = (-C.a1 * _inv(2, p)) % p
        t = -C.a3 * _inv(2, p)
    C = _rst(C, 0, s, t)

    b, c, d = C.a2 // p, C.a4 // p**2, C.a6 // p**3
    w = 27 * d * d - b * b * c * c + 4 * b**3 * d - 18 * b * c * d + 4 * c**3
    x = 3 * c - b * b
    if not _pdiv(w, p):
        return LocalData(p, ReductionKind.ADDITIVE, nD - 4, 0, "I0*")

    if not _pdiv(x, p):
        # Double root of the cubic: shift it to T = 0 and peel off I_m^*.
        if p == 2:
            r = c
        elif p == 3:
            r = b * c
        else:
            r = (b * c - 9 * d) * _inv(2 * x, p)
        C = _rst(C, p * (r % p), 0, 0)
        ix, iy = 3, 3
        mx, my = p * p, p * p
        while True:
            xa2 = C.a2 // p
            xa3 = C.a3 // my
            xa6 = C.a6 // (mx * my)
            if not _pdiv(xa3 * xa3 + 4 * xa6, p):
                break
            t = xa6 % 2 if p == 2 else (-xa3 * _inv(2, p)) % p
            C = _rst(C, 0, 0, my * t)
            my *= p
            iy += 1
            xa2 = C.a2 // p
            xa4 = C.a4 // (p * mx)
            xa6 = C.a6 // (mx * my)
            if not _pdiv(xa4 * xa4 - 4 * xa2 * xa6, p):
                break
            r = (xa6 * xa2) % 2 if p == 2 else (-xa4 * _inv(2 * xa2, p)) % p
            C = _rst(C, mx * r, 0, 0)
            mx *= p
            ix += 1
        m = ix + iy - 5
        return LocalData(p, ReductionKind.ADDITIVE, nD - m - 4, 0, f"I{m}*")

    # Triple root: move it to T = 0.
    rt = -d if p == 3 else -b * _inv(3, p)
    C = _rst(C, p * (rt % p), 0, 0)
    x3, x6 = C.a3 // p**2, C.a6 // p**4
    if not _pdiv(x3 * x3 + 4 * x6, p):
        return LocalData(p, ReductionKind.ADDITIVE, nD - 6, 0, "IV*")
    t = x6 % 2 if p == 2 else (x3 * _inv(2, p)) % p
    C = _rst(C, 0, 0, -p * p * t)
    if _pval(C.a4, p) < 4:
        return LocalData(p, ReductionKind.ADDITIVE, nD - 7, 0, "III*")
    if _pval(C.a6, p) < 6:
        return LocalData(p, ReductionKind.ADDITIVE, nD - 8, 0, "II*")
    raise NotMinimalAtP(p)


def tate_local(curve: WeierstrassCurve, p: int) -> LocalData:
    """Local reduction data at p; uses the discriminant shortcut for p >= 5."""
    if p < 5:
        return tate_full(curve, p)
    vd = valuation(curve.disc, p)
    if vd == 0:
        return LocalData(p, ReductionKind.GOOD, 0, None, "I0")
    if curve.c4 % p:
        # Node: split iff -c6 is a square mod p (-c6 is never 0 mod p here).
        split = pow(-curve.c6 % p, (p - 1) // 2, p) == 1
        kind = ReductionKind.SPLIT if split else ReductionKind.NONSPLIT
        return LocalData(p, kind, 1, 1 if split else -1, f"I{vd}")
    if vd >= 12 and _pval(curve.c4, p) >= 4:
        raise NotMinimalAtP(p)
    return LocalData(p, ReductionKind.ADDITIVE, 2, 0, _additive_symbol(curve, p))


def _additive_symbol(curve: WeierstrassCurve, p: int) -> str:
    # Kodaira type for p >= 5 from valuations of c4 and disc.
    vd = valuation(curve.disc, p)
    if vd > 6 and _pval(curve.c4, p) == 2:
        return f"I{vd - 6}*"
    return {2: "II", 3: "III", 4: "IV", 6: "I0*", 8: "IV*", 9: "III*", 10: "II*"}[vd]


@dataclass(frozen=True)
class Conductor:
    value: int
    factorization: tuple[tuple[int, int], ...]
    local: tuple[LocalData, ...] = field(default=(), compare=False)


def bad_local_data(curve: WeierstrassCurve) -> list[LocalData]:
    """LocalData at every prime dividing the discriminant of a minimal model."""
    return [tate_local(curve, p) for p in prime_divisors(curve.disc)]


def conductor(curve: WeierstrassCurve) -> Conductor:
    """Conductor of the curve (any integral model is accepted)."""
    model = minimal_model(curve).curve
    local = tuple(bad_local_data(model))
    fact = tuple((ld.p, ld.exponent) for ld in local if ld.exponent > 0)
    return Conductor(math.prod(p**e for p, e in fact), fact, local)


def discriminant_factorization(curve: WeierstrassCurve) -> dict[int, int]:
    return factorint(curve.disc)

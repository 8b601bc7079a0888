"""Integer factorization for Weierstrass discriminants.

Trial division clears every prime below ``TRIAL_BOUND``; whatever is left is
split with Brent's variant of Pollard rho, with a strong-probable-prime test
deciding when a cofactor is prime.
"""
from __future__ import annotations

import math
import random

TRIAL_BOUND = 10**6

# Deterministic for n < 3.3e24 with these bases.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


class FactorizationIncomplete(ArithmeticError):
    """Raised when a composite cofactor resists Pollard rho."""

    def __init__(self, cofactor: int):
        super().__init__(f"could not split composite cofactor {cofactor}")
        self.cofactor = cofactor


def _small_primes(bound: int) -> list[int]:
    sieve = bytearray([1]) * (bound + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, bound + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


_PRIMES: list[int] | None = None


def small_primes() -> list[int]:
    global _PRIMES
    if _PRIMES is None:
        _PRIMES = _small_primes(TRIAL_BOUND)
    return _PRIMES


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin with fixed bases (a proof below 3.3e24)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent(n: int, rng: random.Random, max_iter: int) -> int | None:
    if n % 2 == 0:
        return 2
    y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
    g = r = q = 1
    x = ys = y
    steps = 0
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
        r *= 2
        steps += r
        if steps > max_iter:
            return None
    if g == n:
        g = 1
        while g == 1:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
    return g if g != n else None


def _split(n: int, out: dict[int, int], rng: random.Random) -> None:
    if n == 1:
        return
    if is_probable_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    root = math.isqrt(n)
    if root * root == n:
        _split(root, out, rng)
        _split(root, out, rng)
        return
    for _ in range(20):
        d = _brent(n, rng, max_iter=1 << 22)
        if d is not None and 1 < d < n:
            _split(d, out, rng)
            _split(n // d, out, rng)
            return
    raise FactorizationIncomplete(n)


def factorint(n: int) -> dict[int, int]:
    """Prime factorization of ``|n|`` as ``{p: e}``; ``n`` must be nonzero."""
    n = abs(int(n))
    if n == 0:
        raise ValueError("cannot factor 0")
    out: dict[int, int] = {}
    for p in small_primes():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
    if n > 1:
        if n <= TRIAL_BOUND**2:
            out[n] = out.get(n, 0) + 1
        else:
            _split(n, out, random.Random(n))
    return dict(sorted(out.items()))


def prime_divisors(n: int) -> list[int]:
    return list(factorint(n))


def valuation(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v

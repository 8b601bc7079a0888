import math
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from subleading.curve_model import WeierstrassCurve, conductor, minimal_model
from subleading.dirichlet_coefficients import (
    BadReductionPrime,
    CoefficientTable,
    MissingPrime,
    ap_good,
    choose_truncation,
    count_points_naive,
    curve_coefficients,
    extend_multiplicative,
    primes_up_to,
    tail_bound,
)
from subleading.fixtures import CATALOG, NEWFORM_11_2_A_A
from subleading.selftest import random_ap_pairs, random_curves

E11 = WeierstrassCurve(0, -1, 1, -10, -20)


def brute_count(E, p):
    # Pure-Python double loop, kept apart from the numpy version.
    a1, a2, a3, a4, a6 = E.ainvs
    n = 1
    for x in range(p):
        for y in range(p):
            if (y * y + a1 * x * y + a3 * y - x**3 - a2 * x * x - a4 * x - a6) % p == 0:
                n += 1
    return n


def test_ap_11a_small_primes():
    assert ap_good(E11, 2) == -2 == 2 + 1 - brute_count(E11, 2)
    assert ap_good(E11, 3) == -1 == 3 + 1 - brute_count(E11, 3)


def test_ap_bad_prime_rejected():
    with pytest.raises(BadReductionPrime):
        ap_good(E11, 11)


def test_naive_counter_matches_brute_force():
    for E, p in random_ap_pairs(count=15, seed=5, pmax=60):
        assert count_points_naive(E, p) == brute_count(E, p)


def test_ap_against_naive_random_pairs():
    pairs = random_ap_pairs(count=50, seed=2024, pmax=500)
    assert len(pairs) == 50
    for E, p in pairs:
        assert ap_good(E, p) == p + 1 - count_points_naive(E, p)


def test_ap_against_naive_all_good_primes():
    primes = primes_up_to(500)
    for E in random_curves(100, seed=99):
        for p in primes:
            if E.disc % p:
                assert ap_good(E, p) == p + 1 - count_points_naive(E, p), (E, p)


def test_newform_11():
    table = curve_coefficients(E11, 20)
    assert tuple(table.a[1:]) == NEWFORM_11_2_A_A
    assert tuple(table.a[1:6]) == (1, -2, -1, 2, 1)


def test_hecke_step_and_product():
    table = curve_coefficients(E11, 30)
    assert table[1] == 1
    assert table[4] == (-2) ** 2 - 2
    assert table[6] == table[2] * table[3] == 2
    assert table[11**1] == 1  # split multiplicative


@pytest.fixture(scope="module")
def catalog_tables():
    out = {}
    for fx in CATALOG:
        E = minimal_model(fx.curve).curve
        C = conductor(E)
        out[fx.label] = (C, curve_coefficients(E, 2000, C.local))
    return out


def test_hasse_bound(catalog_tables):
    for C, table in catalog_tables.values():
        bad = {p for p, _ in C.factorization}
        for p in primes_up_to(table.M):
            if p not in bad:
                assert abs(table[p]) <= 2 * math.sqrt(p)


def test_bad_prime_powers(catalog_tables):
    for C, table in catalog_tables.values():
        for ld in C.local:
            q, k = ld.p, 1
            while q <= table.M:
                assert table[q] == ld.bad_ap**k
                q *= ld.p
                k += 1


def test_hecke_recursion(catalog_tables):
    for C, table in catalog_tables.values():
        bad = {p for p, _ in C.factorization}
        for p in primes_up_to(int(math.sqrt(table.M))):
            if p in bad:
                continue
            q = p
            while q * p <= table.M:
                prev = table[q // p]
                assert table[q * p] == table[p] * table[q] - p * prev
                q *= p


@given(st.sampled_from([fx.label for fx in CATALOG]), st.integers(1, 2000), st.integers(1, 2000))
def test_multiplicativity(catalog_tables, label, m, n):
    _, table = catalog_tables[label]
    if math.gcd(m, n) == 1 and m * n <= table.M:
        assert table[m * n] == table[m] * table[n]


def test_extend_multiplicative_missing_prime():
    with pytest.raises(MissingPrime):
        extend_multiplicative({2: -2, 3: -1}, [], 10)


def test_extend_multiplicative_empty():
    table = extend_multiplicative({}, [], 1)
    assert table.M == 1 and table[1] == 1


def test_table_file_roundtrip(tmp_path):
    table = curve_coefficients(E11, 50)
    path = tmp_path / "a.txt"
    table.to_file(path)
    back = CoefficientTable.from_file(path)
    assert back.source == "user-supplied"
    assert np.array_equal(back.a, table.a)


def test_table_rejects_bad_first_coefficient():
    with pytest.raises(ValueError):
        CoefficientTable(2, np.array([0, 2, 1]))


def _tail_sum(M, N, t0):
    # Direct summation oracle for the truncation bound.
    c = 2 * math.pi * min(t0, 1 / t0) / math.sqrt(N)
    return math.fsum(2 * n**1.1 * math.exp(-c * n) for n in range(M + 1, 200 * M + 10_000))


def test_truncation_11():
    M = choose_truncation(11, 1e-12, 1.0)
    assert 25 <= M <= 40
    assert _tail_sum(M // 2, 11, 1.0) < 1e-12
    assert _tail_sum(M // 2 - 1, 11, 1.0) >= 1e-12


def test_truncation_5077():
    M = choose_truncation(5077, 1e-12, 1.0)
    assert 200 <= M <= 1000
    assert _tail_sum(M // 2, 5077, 1.0) < 1e-12


def test_tail_bound_dominates_sum():
    for N, M, t0 in [(11, 10, 1.0), (389, 100, 1.3), (5077, 300, 0.8)]:
        assert tail_bound(M, N, t0) >= _tail_sum(M, N, t0)
        assert tail_bound(M, N, t0) <= 1.01 * _tail_sum(M, N, t0)


@given(st.integers(1, 10**5), st.integers(1, 10**5), st.sampled_from([1e-6, 1e-9, 1e-12, 1e-15]))
def test_truncation_monotone(N1, N2, err):
    lo, hi = sorted((N1, N2))
    assert choose_truncation(lo, err) <= choose_truncation(hi, err)
    assert choose_truncation(lo, err) <= choose_truncation(lo, err / 100)

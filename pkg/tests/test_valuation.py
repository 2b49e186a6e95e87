from __future__ import annotations

import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from quasitomo.cyclo import RealSubfieldElement, euler_phi
from quasitomo.valuation import (BASE_SOLUTIONS, N1, QuadrupleIndex, Verdict, classify_cross_ratio,
                                 enumerate_rational_f, eval_f, explain, f_valuation_by_factors,
                                 family_label, iter_d_m, n2_member, prime_factors, summarize_sweep,
                                 two_prime_criterion, vp_one_minus_zeta, vp_rational)

PRIMES = (2, 3, 5, 7, 11, 13)


def f_float(m: int, d) -> complex:
    z = lambda s: 1 - cmath.exp(2j * math.pi * s / m)
    k1, k2, k3, k4 = d
    return z(k1) * z(k2) / (z(k3) * z(k4))


def vp_oracle(m: int, s: int, p: int) -> Fraction:
    """v_p of 1 - zeta_r via the absolute norm, r the exact order of zeta_m^s."""
    r = m // math.gcd(m, s)
    norm = round(math.prod(abs(1 - cmath.exp(2j * math.pi * k / r)) for k in range(1, r) if math.gcd(k, r) == 1))
    return Fraction(vp_rational(norm, p), euler_phi(r))


def rational_oracle(m: int, max_den: int = 60) -> dict[tuple, Fraction]:
    out = {}
    for d in iter_d_m(m):
        v = f_float(m, d)
        if abs(v.imag) > 1e-9:
            continue
        q = Fraction(v.real).limit_denominator(max_den)
        if abs(float(q) - v.real) < 1e-9:
            out[d] = q
    return out


def test_vp_rational_examples():
    assert vp_rational(Fraction(4, 3), 2) == 2
    assert vp_rational(Fraction(4, 3), 3) == -1
    assert vp_rational(-12, 2) == 2
    assert vp_rational(7, 5) == 0
    with pytest.raises(ValueError):
        vp_rational(0, 2)
    with pytest.raises(ValueError):
        vp_rational(4, 4)


def test_vp_one_minus_zeta_examples():
    assert vp_one_minus_zeta(4, 1, 2) == Fraction(1, 2)
    assert vp_one_minus_zeta(8, 1, 2) == Fraction(1, 4)
    assert vp_one_minus_zeta(9, 3, 3) == Fraction(1, 2)
    assert vp_one_minus_zeta(6, 1, 2) == 0
    assert vp_one_minus_zeta(12, 6, 2) == 1
    with pytest.raises(ValueError):
        vp_one_minus_zeta(12, 12, 2)


@given(st.integers(2, 40), st.data())
def test_vp_one_minus_zeta_matches_norm(m, data):
    s = data.draw(st.integers(1, m - 1))
    p = data.draw(st.sampled_from(PRIMES))
    assert vp_one_minus_zeta(m, s, p) == vp_oracle(m, s, p)


def test_quadruple_index():
    d = QuadrupleIndex(12, (6, 6, 4, 8))
    assert d.in_d and d.in_d_prime
    assert d.swapped().k == (4, 8, 6, 6)
    assert not QuadrupleIndex(12, (6, 6, 4, 9)).in_d_prime
    with pytest.raises(ValueError):
        QuadrupleIndex(12, (0, 6, 4, 2))
    with pytest.raises(ValueError):
        QuadrupleIndex(3, (1, 1, 1, 1))
    with pytest.raises(ValueError):
        eval_f(QuadrupleIndex(12, (6, 6, 4, 9)))


def test_iter_d_m_matches_definition():
    for m in (4, 7, 12):
        brute = [k for k in ((a, b, c, e) for a in range(1, m) for b in range(1, m)
                             for c in range(1, m) for e in range(1, m))
                 if QuadrupleIndex(m, k).in_d]
        assert list(iter_d_m(m)) == sorted(brute)


@pytest.mark.parametrize("name", sorted(BASE_SOLUTIONS))
def test_base_solutions(name):
    d, q = BASE_SOLUTIONS[name]
    assert QuadrupleIndex(12, d).in_d
    assert eval_f(QuadrupleIndex(12, d)) == q
    assert abs(f_float(12, d) - float(q)) < 1e-12


def test_families():
    for s in range(2, 12):
        for k in range(1, s):
            if 2 * k <= s:
                d = (2 * k, s, k, k + s)
                assert family_label(2 * s, d) == "xii"
                assert eval_f(QuadrupleIndex(2 * s, d)) == 2
            if s <= 2 * k:
                d = (s, 2 * k, k, k + s)
                # at 2k = s both patterns describe the same quadruple
                assert family_label(2 * s, d) == ("xii" if 2 * k == s else "xiii")
                assert eval_f(QuadrupleIndex(2 * s, d)) == 2
    assert family_label(7, (2, 3, 1, 4)) is None


@pytest.mark.parametrize("m", range(4, 17))
def test_enumeration_matches_float_oracle(m):
    exact = {d: q for mm, d, q in enumerate_rational_f(m, m)}
    assert exact == rational_oracle(m)


def test_enumeration_agrees_with_eval_f():
    for m, d, q in enumerate_rational_f(14):
        assert eval_f(QuadrupleIndex(m, d)) == q


def test_rational_values_valuations():
    # a rational f_m(d) has the same p-adic valuation computed either way
    for m, d, q in enumerate_rational_f(20):
        for p in PRIMES:
            assert vp_rational(q, p) == f_valuation_by_factors(QuadrupleIndex(m, d), p)


def test_enumerate_rejects_small_bound():
    with pytest.raises(ValueError):
        list(enumerate_rational_f(3))


def test_summary_small():
    s = summarize_sweep(enumerate_rational_f(12), 12)
    assert s.ok and s.values_in_n1 and not s.unexplained
    assert s.base_at_12 == frozenset(BASE_SOLUTIONS)
    assert s.values == N1
    assert summarize_sweep(enumerate_rational_f(4), 4).count == 1


def test_explain_rejects_wrong_value():
    assert explain(12, (6, 6, 4, 8), Fraction(4, 3)) == "i"
    assert explain(12, (6, 6, 4, 8), Fraction(2)) is None
    assert explain(24, (12, 12, 8, 16), Fraction(4, 3)) == "i"


def test_n2_membership():
    for q in ("1", "-1", "16/9", "9/4", "4", "9", "16", "1/2", "-3/2", "2/3", "-5/3", "9/16", "15/16", "1/4"):
        assert n2_member(Fraction(q)), q
    for q in ("13/4", "18/7", "11/25", "7", "0", "25/16", "32"):
        assert not n2_member(Fraction(q)), q


def test_two_prime_criterion():
    assert two_prime_criterion(1) and two_prime_criterion(-1)
    assert two_prime_criterion(12) and two_prime_criterion(Fraction(1, 12))
    assert two_prime_criterion(Fraction(-36, 5))
    assert not two_prime_criterion(30)
    assert not two_prime_criterion(Fraction(7, 30))
    assert not two_prime_criterion(Fraction(30, 7))
    assert two_prime_criterion(Fraction(7, 15))
    with pytest.raises(ValueError):
        two_prime_criterion(0)


@given(st.integers(1, 10**6))
def test_prime_factors_product(n):
    ps = prime_factors(n)
    m = n
    for p in ps:
        while m % p == 0:
            m //= p
    assert m == 1 and ps == sorted(set(ps))


def test_classify_rational_small_orders():
    v = classify_cross_ratio(RealSubfieldElement(4, [Fraction(8, 5)]), 4)
    assert v.verdict is Verdict.DETERMINED_BY_N1 and v.determined
    v = classify_cross_ratio(RealSubfieldElement(4, [2]), 4)
    assert v.n1_member and v.verdict is Verdict.INCONCLUSIVE
    v = classify_cross_ratio(RealSubfieldElement(4, [30]), 4)
    assert v.verdict is Verdict.DETERMINED_BY_N1 and not v.two_prime_ok
    v = classify_cross_ratio(RealSubfieldElement(7, [30, 0, 0]), 7)
    assert v.norm == 27000 and v.verdict is Verdict.DETERMINED_BY_TWO_PRIME
    with pytest.raises(ArithmeticError):
        classify_cross_ratio(RealSubfieldElement(12, [1, 1]), 3)


def test_classify_norm_orders():
    v = classify_cross_ratio(RealSubfieldElement(12, [2, Fraction(1, 2)]), 12)
    assert v.norm == Fraction(13, 4) and v.verdict is Verdict.DETERMINED_BY_N2
    v = classify_cross_ratio(RealSubfieldElement(12, [1, Fraction(1, 2)]), 12)
    assert v.norm == Fraction(1, 4) and v.verdict is Verdict.INCONCLUSIVE
    v = classify_cross_ratio(RealSubfieldElement(7, [2, 0, 1]), 7)
    assert v.verdict in (Verdict.DETERMINED_BY_TWO_PRIME, Verdict.INCONCLUSIVE)

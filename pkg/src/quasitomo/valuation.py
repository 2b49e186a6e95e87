"""p-adic valuations, the rational values of f_m over D_m, and cross-ratio norm verdicts."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .cyclo import CyclotomicRational, RealSubfieldElement, field_norm_real, order_data


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of |n| (trial division; inputs here are small)."""
    n = abs(n)
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


def vp_rational(q: Fraction | int, p: int) -> int:
    """Exponent of the prime p in the nonzero rational q."""
    q = Fraction(q)
    if q == 0:
        raise ValueError("valuation of 0 is infinite")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    v = 0
    a, b = abs(q.numerator), q.denominator
    while a % p == 0:
        a //= p
        v += 1
    while b % p == 0:
        b //= p
        v -= 1
    return v


def vp_one_minus_zeta(m: int, s: int, p: int) -> Fraction:
    """Valuation of 1 - zeta_m^s at a prime above p, normalised so that v_p(p) = 1."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if s % m == 0:
        raise ValueError("1 - zeta^0 = 0 has infinite valuation")
    r = m // math.gcd(m, s)
    t = 0
    while r % p == 0:
        r //= p
        t += 1
    if r != 1 or t == 0:
        return Fraction(0)
    return Fraction(1, p ** (t - 1) * (p - 1))


@dataclass(frozen=True)
class QuadrupleIndex:
    m: int
    k: tuple[int, int, int, int]

    def __post_init__(self):
        if self.m < 4:
            raise ValueError("m must be at least 4")
        if len(self.k) != 4 or not all(1 <= x <= self.m - 1 for x in self.k):
            raise ValueError(f"indices must lie in 1..{self.m - 1}")

    @property
    def in_d_prime(self) -> bool:
        k1, k2, k3, k4 = self.k
        return k1 + k2 == k3 + k4

    @property
    def in_d(self) -> bool:
        k1, k2, k3, k4 = self.k
        return self.in_d_prime and k3 < k1 <= k2 < k4 <= self.m - 1

    def swapped(self) -> QuadrupleIndex:
        k1, k2, k3, k4 = self.k
        return QuadrupleIndex(self.m, (k3, k4, k1, k2))


def _one_minus_zeta(m: int, s: int) -> CyclotomicRational:
    return 1 - CyclotomicRational.zeta(m, s)


def eval_f(d: QuadrupleIndex) -> CyclotomicRational:
    """(1-z^k1)(1-z^k2) / ((1-z^k3)(1-z^k4)) with z = zeta_m, exactly."""
    if not d.in_d_prime:
        raise ValueError(f"{d.k} violates k1 + k2 = k3 + k4")
    k1, k2, k3, k4 = d.k
    if k3 % d.m == 0 or k4 % d.m == 0:
        raise ZeroDivisionError("zero denominator")
    m = d.m
    return _one_minus_zeta(m, k1) * _one_minus_zeta(m, k2) / (_one_minus_zeta(m, k3) * _one_minus_zeta(m, k4))


def f_valuation_by_factors(d: QuadrupleIndex, p: int) -> Fraction:
    k1, k2, k3, k4 = d.k
    v = lambda s: vp_one_minus_zeta(d.m, s, p)
    return v(k1) + v(k2) - v(k3) - v(k4)


def iter_d_m(m: int) -> Iterator[tuple[int, int, int, int]]:
    """All d in D_m in lexicographic order."""
    for k1 in range(1, m):
        for k2 in range(k1, m):
            for k3 in range(1, k1):
                k4 = k1 + k2 - k3
                if k4 <= m - 1:
                    yield (k1, k2, k3, k4)


def _pair_vector(m: int, a: int, b: int) -> list[int]:
    # (1 - z^a)(1 - z^b) = 1 - z^a - z^b + z^(a+b), reduced
    p = order_data(m).powers
    return [w - x - y + z for w, x, y, z in zip(p[0], p[a % m], p[b % m], p[(a + b) % m])]


def rational_ratio(num: list[int], den: list[int]) -> Fraction | None:
    """q with num = q*den if it exists, else None."""
    i = next(j for j, x in enumerate(den) if x)
    q = Fraction(num[i], den[i])
    for x, y in zip(num, den):
        if x * q.denominator != y * q.numerator:
            return None
    return q


def enumerate_rational_f(m_max: int, m_min: int = 4) -> Iterator[tuple[int, tuple[int, int, int, int], Fraction]]:
    """Stream every (m, d, q) with d in D_m and f_m(d) = q rational."""
    if m_max < 4:
        raise ValueError("m_max must be at least 4")
    for m in range(max(4, m_min), m_max + 1):
        cache: dict[tuple[int, int], list[int]] = {}

        def pair(a: int, b: int) -> list[int]:
            v = cache.get((a, b))
            if v is None:
                v = cache[(a, b)] = _pair_vector(m, a, b)
            return v

        for d in iter_d_m(m):
            k1, k2, k3, k4 = d
            q = rational_ratio(pair(k1, k2), pair(k3, k4))
            if q is not None:
                yield m, d, q


N1 = frozenset(Fraction(x) for x in ("4/3", "3/2", "2", "3", "4"))

BASE_SOLUTIONS: dict[str, tuple[tuple[int, int, int, int], Fraction]] = {
    "i": ((6, 6, 4, 8), Fraction(4, 3)),
    "ii": ((6, 6, 2, 10), Fraction(4)),
    "iii": ((4, 8, 3, 9), Fraction(3, 2)),
    "iv": ((4, 8, 2, 10), Fraction(3)),
    "v": ((4, 4, 2, 6), Fraction(3, 2)),
    "vi": ((8, 8, 6, 10), Fraction(3, 2)),
    "vii": ((4, 4, 1, 7), Fraction(3)),
    "viii": ((8, 8, 5, 11), Fraction(3)),
    "ix": ((3, 9, 2, 10), Fraction(2)),
    "x": ((3, 3, 1, 5), Fraction(2)),
    "xi": ((9, 9, 7, 11), Fraction(2)),
}


def family_label(m: int, d: tuple[int, int, int, int]) -> str | None:
    """'xii' or 'xiii' when d belongs to one of the q = 2 families at m = 2s."""
    if m % 2:
        return None
    s = m // 2
    k1, k2, k3, k4 = d
    k = k3
    if s < 2 or k4 != k + s:
        return None
    if k1 == 2 * k and k2 == s and 1 <= k and 2 * k <= s:
        return "xii"
    if k1 == s and k2 == 2 * k and s <= 2 * k and k < s:
        return "xiii"
    return None


def base_label(m: int, d: tuple[int, int, int, int]) -> str | None:
    """Label of the base solution proportional to (m, d), if any.

    f_m(d) only depends on d/m, so (m, d) and (12, bd) match when 12*d = m*bd.
    """
    for name, (bd, _) in BASE_SOLUTIONS.items():
        if all(12 * x == m * y for x, y in zip(d, bd)):
            return name
    return None


def _down(a: int) -> set[Fraction]:
    return {Fraction(a, b) for b in range(1, a) if math.gcd(a, b) == 1}


def _build_n2() -> frozenset[Fraction]:
    big_n: set[Fraction] = set()
    for a in (2, 3, 4, 5, 6, 8, 9, 12, 16):
        for x in _down(a):
            big_n.add(x)
            big_n.add(-x)
    out = {Fraction(1), Fraction(-1)}
    out |= {x * x for x in N1}
    out |= big_n
    out |= {1 / x for x in big_n}
    return frozenset(out)


N2 = _build_n2()


def n2_member(q: Fraction | int) -> bool:
    return Fraction(q) in N2


def two_prime_criterion(q: Fraction | int) -> bool:
    """Membership in +-({1} u [Q_{>1} with <= 2 prime factors in the numerator]^{+-1})."""
    q = abs(Fraction(q))
    if q == 0:
        raise ValueError("criterion undefined at 0")
    if q == 1:
        return True
    big = q if q > 1 else 1 / q
    return len(prime_factors(big.numerator)) <= 2


class Verdict(str, enum.Enum):
    DETERMINED_BY_N1 = "DeterminedByN1"
    DETERMINED_BY_N2 = "DeterminedByN2"
    DETERMINED_BY_TWO_PRIME = "DeterminedByTwoPrime"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class CrossRatioVerdict:
    value: RealSubfieldElement
    norm: Fraction
    n1_member: bool
    n2_member: bool
    two_prime_ok: bool
    verdict: Verdict

    @property
    def determined(self) -> bool:
        return self.verdict is not Verdict.INCONCLUSIVE


def classify_cross_ratio(x: RealSubfieldElement, n: int) -> CrossRatioVerdict:
    """Apply the N1 / N2 / two-prime exclusion tests to a cross ratio in k_n."""
    norm = field_norm_real(x)
    in_n1 = x.is_rational() and x.coeffs[0] in N1
    in_n2 = n2_member(norm)
    tp = two_prime_criterion(norm)
    if n in (3, 4, 6):
        if not x.is_rational():
            raise ArithmeticError("cross ratio must be rational for n in {3, 4, 6}")
        verdict = Verdict.DETERMINED_BY_N1 if not in_n1 else None
    elif n in (5, 8, 10, 12):
        verdict = Verdict.DETERMINED_BY_N2 if not in_n2 else None
    else:
        verdict = None
    if verdict is None:
        verdict = Verdict.DETERMINED_BY_TWO_PRIME if not tp else Verdict.INCONCLUSIVE
    return CrossRatioVerdict(x, norm, in_n1, in_n2, tp, verdict)


@dataclass
class SweepSummary:
    m_max: int
    count: int
    values: frozenset[Fraction]
    unexplained: list[tuple[int, tuple[int, int, int, int], Fraction]]
    base_at_12: frozenset[str]

    @property
    def values_in_n1(self) -> bool:
        return self.values <= N1

    @property
    def ok(self) -> bool:
        bases_ok = self.m_max < 12 or self.base_at_12 == frozenset(BASE_SOLUTIONS)
        return self.values_in_n1 and not self.unexplained and bases_ok


def explain(m: int, d: tuple[int, int, int, int], q: Fraction) -> str | None:
    """Family or base label accounting for a rational value, if any."""
    fam = family_label(m, d)
    if fam is not None and q == 2:
        return fam
    name = base_label(m, d)
    if name is not None and BASE_SOLUTIONS[name][1] == q:
        return name
    return None


def summarize_sweep(records, m_max: int) -> SweepSummary:
    values = set()
    unexplained = []
    bases = set()
    count = 0
    for m, d, q in records:
        count += 1
        values.add(q)
        label = explain(m, d, q)
        if label is None:
            unexplained.append((m, d, q))
        if m == 12 and label in BASE_SOLUTIONS and BASE_SOLUTIONS[label][0] == d:
            bases.add(label)
    return SweepSummary(m_max, count, frozenset(values), unexplained, frozenset(bases))

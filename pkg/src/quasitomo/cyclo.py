"""Exact arithmetic in cyclotomic fields Q(zeta_n) and their maximal real subfields.

Elements of Q(zeta_n) are stored as an integer numerator vector over the power
basis {1, zeta, ..., zeta^(phi(n)-1)} plus one positive common denominator.
The representation is canonical, so equality is coefficient equality.
"""

from __future__ import annotations

import cmath
import math
import os
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np

Number = Union[int, Fraction]

MAX_ORDER = int(os.environ.get("QUASITOMO_MAX_ORDER", "60"))


class OrderMismatch(ValueError):
    pass


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # coefficients listed from degree 0 upwards; den is monic
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        out[i - dd] = c
        if c:
            for j in range(dd + 1):
                num[i - dd + j] -= c * den[j]
    if any(num[:dd]):
        raise ArithmeticError("inexact polynomial division")
    return out


_phi_poly_cache: dict[int, tuple[int, ...]] = {1: (-1, 1)}


def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first."""
    if n in _phi_poly_cache:
        return _phi_poly_cache[n]
    p = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            p = _poly_divexact(p, list(cyclotomic_polynomial(d)))
    res = tuple(p)
    _phi_poly_cache[n] = res
    return res


def euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


def _solve_unimodular(cols: list[list[int]]) -> list[list[Fraction]]:
    # inverse of the square matrix whose j-th column is cols[j]
    size = len(cols)
    a = [[Fraction(cols[j][i]) for j in range(size)] + [Fraction(int(i == k)) for k in range(size)]
         for i in range(size)]
    for c in range(size):
        piv = next(r for r in range(c, size) if a[r][c] != 0)
        a[c], a[piv] = a[piv], a[c]
        pv = a[c][c]
        a[c] = [x / pv for x in a[c]]
        for r in range(size):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[size:] for row in a]


class OrderData:
    """Per-order tables: reduced powers of zeta, embedding exponents, real basis."""

    def __init__(self, n: int):
        if n < 3:
            raise ValueError(f"order must be >= 3, got {n}")
        self.n = n
        poly = cyclotomic_polynomial(n)
        self.phi = len(poly) - 1
        self.half = self.phi // 2
        self.units = tuple(k for k in range(1, n) if math.gcd(k, n) == 1)
        # one exponent per complex-conjugate pair, identity first
        self.embed_exponents = tuple(k for k in self.units if 2 * k < n)
        phi = self.phi
        table = []
        vec = [1] + [0] * (phi - 1)
        for _ in range(n):
            table.append(tuple(vec))
            top = vec[-1]
            vec = [0] + vec[:-1]
            if top:
                vec = [v - top * c for v, c in zip(vec, poly[:phi])]
        self.powers = tuple(table)
        # basis B1 = {c^j}, B2 = {c^j zeta}, c = zeta + conj(zeta)
        c = _Raw.add(self, self.powers[1], self.powers[n - 1])
        cpows = [tuple([1] + [0] * (phi - 1))]
        for _ in range(1, self.half):
            cpows.append(_Raw.mul(self, cpows[-1], c))
        self.c_powers = tuple(cpows)
        b2 = [_Raw.mul(self, v, self.powers[1]) for v in cpows]
        cols = [list(v) for v in cpows] + [list(v) for v in b2]
        inv = _solve_unimodular(cols)
        if any(x.denominator != 1 for row in inv for x in row):
            raise ArithmeticError("real basis is not a Z-basis")
        self.basis_inv = tuple(tuple(int(x) for x in row) for row in inv)


class _Raw:
    """Integer-vector kernels on reduced power-basis coefficients."""

    @staticmethod
    def add(od: OrderData, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        return tuple(x + y for x, y in zip(a, b))

    @staticmethod
    def mul(od: OrderData, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        phi, n = od.phi, od.n
        conv = [0] * (2 * phi - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        conv[i + j] += x * y
        out = conv[:phi]
        for e in range(phi, 2 * phi - 1):
            ce = conv[e]
            if ce:
                row = od.powers[e % n]
                for j in range(phi):
                    if row[j]:
                        out[j] += ce * row[j]
        return tuple(out)

    @staticmethod
    def galois(od: OrderData, a: Sequence[int], k: int) -> tuple[int, ...]:
        n, phi = od.n, od.phi
        out = [0] * phi
        for j, x in enumerate(a):
            if x:
                row = od.powers[(j * k) % n]
                for i in range(phi):
                    if row[i]:
                        out[i] += x * row[i]
        return tuple(out)


_order_cache: dict[int, OrderData] = {}
_order_lock = threading.Lock()


def order_data(n: int) -> OrderData:
    od = _order_cache.get(n)
    if od is None:
        with _order_lock:
            od = _order_cache.get(n)
            if od is None:
                if n > MAX_ORDER:
                    raise ValueError(f"order {n} exceeds the configured maximum {MAX_ORDER}")
                od = OrderData(n)
                _order_cache[n] = od
    return od


def _normalize(num: Sequence[int], den: int) -> tuple[tuple[int, ...], int]:
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    if den < 0:
        num = [-x for x in num]
        den = -den
    g = math.gcd(den, *num)
    if g > 1:
        num = [x // g for x in num]
        den //= g
    if not any(num):
        den = 1
    return tuple(num), den


class CyclotomicRational:
    """An element of Q(zeta_n) in canonical power-basis form."""

    __slots__ = ("order", "num", "den", "_hash")

    def __init__(self, order: int, coeffs: Iterable[Number] = ()):
        od = order_data(order)
        coeffs = [c if isinstance(c, int) else Fraction(c) for c in coeffs]
        den = 1
        for c in coeffs:
            if isinstance(c, Fraction):
                den = den * c.denominator // math.gcd(den, c.denominator)
        raw = [int(c * den) for c in coeffs]
        if len(raw) > od.phi:
            vec = [0] * od.phi
            for e, x in enumerate(raw):
                if x:
                    row = od.powers[e % order]
                    for i in range(od.phi):
                        vec[i] += x * row[i]
            raw = vec
        else:
            raw = raw + [0] * (od.phi - len(raw))
        self.order = order
        self.num, self.den = _normalize(raw, den)
        self._hash = None

    @classmethod
    def _make(cls, order: int, num: Sequence[int], den: int = 1) -> CyclotomicRational:
        obj = cls.__new__(cls)
        obj.order = order
        obj.num, obj.den = _normalize(num, den)
        obj._hash = None
        return obj

    # constructors
    @classmethod
    def from_int(cls, order: int, value: Number) -> CyclotomicRational:
        return cls(order, [value])

    @classmethod
    def zeta(cls, order: int, k: int = 1) -> CyclotomicRational:
        od = order_data(order)
        return cls._make(order, od.powers[k % order])

    @classmethod
    def zero(cls, order: int) -> CyclotomicRational:
        return cls._make(order, [0] * order_data(order).phi)

    @classmethod
    def one(cls, order: int) -> CyclotomicRational:
        return cls.from_int(order, 1)

    # inspection
    @property
    def od(self) -> OrderData:
        return order_data(self.order)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self.den) for x in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def is_integral(self) -> bool:
        return self.den == 1

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self.num[0], self.den)

    def __repr__(self) -> str:
        return f"CyclotomicRational({self.order}, {[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        terms = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if j == 0 else ("z" if j == 1 else f"z^{j}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}{'*' + mono if mono else ''}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"

    # ring structure
    def _coerce(self, other) -> CyclotomicRational:
        if isinstance(other, CyclotomicRational):
            if other.order != self.order:
                raise OrderMismatch(f"orders differ: {self.order} vs {other.order}")
            return other
        if isinstance(other, (int, Fraction)):
            return CyclotomicRational.from_int(self.order, other)
        if isinstance(other, RealSubfieldElement):
            return self._coerce(other.to_cyclotomic())
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        if isinstance(other, CyclotomicRational):
            return self.order == other.order and self.den == other.den and self.num == other.num
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.order, self.num, self.den))
        return self._hash

    def __add__(self, other) -> CyclotomicRational:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        d = self.den * o.den
        return CyclotomicRational._make(
            self.order, [x * o.den + y * self.den for x, y in zip(self.num, o.num)], d)

    __radd__ = __add__

    def __neg__(self) -> CyclotomicRational:
        return CyclotomicRational._make(self.order, [-x for x in self.num], self.den)

    def __sub__(self, other) -> CyclotomicRational:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> CyclotomicRational:
        return (-self) + other

    def __mul__(self, other) -> CyclotomicRational:
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return CyclotomicRational._make(
                self.order, [x * other.numerator for x in self.num], self.den * other.denominator)
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return CyclotomicRational._make(self.order, _Raw.mul(self.od, self.num, o.num), self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> CyclotomicRational:
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other) -> CyclotomicRational:
        return self._coerce(other) * self.inverse()

    def __pow__(self, e: int) -> CyclotomicRational:
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        result = CyclotomicRational.one(self.order)
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # field operations
    def galois(self, k: int) -> CyclotomicRational:
        if math.gcd(k, self.order) != 1:
            raise ValueError(f"exponent {k} is not coprime to {self.order}")
        return CyclotomicRational._make(self.order, _Raw.galois(self.od, self.num, k % self.order), self.den)

    def conj(self) -> CyclotomicRational:
        return self.galois(self.order - 1)

    def inverse(self) -> CyclotomicRational:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        od = self.od
        prod = (1,) + (0,) * (od.phi - 1)
        for k in od.units[1:]:
            prod = _Raw.mul(od, prod, _Raw.galois(od, self.num, k))
        full = _Raw.mul(od, self.num, prod)
        if any(full[1:]):
            raise ArithmeticError("conjugate product is not rational")
        # self = num/den, so 1/self = den * prod / N(num)
        return CyclotomicRational._make(self.order, [x * self.den for x in prod], full[0])

    def norm(self) -> Fraction:
        """Absolute norm N_{K_n/Q}."""
        od = self.od
        prod = self.num
        for k in od.units[1:]:
            prod = _Raw.mul(od, prod, _Raw.galois(od, self.num, k))
        if any(prod[1:]):
            raise ArithmeticError("conjugate product is not rational")
        return Fraction(prod[0], self.den ** od.phi)

    def to_complex(self, j: int = 1) -> complex:
        return embed_complex(self, j)

    def is_real(self) -> bool:
        return self == self.conj()


def embed_complex(z: CyclotomicRational, j: int = 1) -> complex:
    """Value of sigma_j(z) as a double, with sigma_1 the identity embedding."""
    od = z.od
    if not 1 <= j <= od.half:
        raise IndexError(f"embedding index {j} outside 1..{od.half}")
    k = od.embed_exponents[j - 1]
    w = cmath.exp(2j * math.pi * k / z.order)
    acc = 0j
    p = 1 + 0j
    for x in z.num:
        if x:
            acc += x * p
        p *= w
    return acc / z.den


def galois_apply(a: CyclotomicRational, k: int) -> CyclotomicRational:
    return a.galois(k)


def cyclo_mul(a: CyclotomicRational, b: CyclotomicRational) -> CyclotomicRational:
    if a.order != b.order:
        raise OrderMismatch(f"orders differ: {a.order} vs {b.order}")
    return a * b


def cyclo_inv(a: CyclotomicRational) -> CyclotomicRational:
    return a.inverse()


class RealSubfieldElement:
    """An element of k_n = Q(zeta_n + conj(zeta_n)) in the basis {c^j}, c = zeta + conj(zeta)."""

    __slots__ = ("order", "coeffs", "_cyc")

    def __init__(self, order: int, coeffs: Iterable[Number]):
        od = order_data(order)
        cs = tuple(Fraction(c) for c in coeffs)
        if len(cs) > od.half:
            raise ValueError(f"expected at most {od.half} coefficients, got {len(cs)}")
        self.order = order
        self.coeffs = cs + (Fraction(0),) * (od.half - len(cs))
        self._cyc = None

    @classmethod
    def from_cyclotomic(cls, z: CyclotomicRational) -> RealSubfieldElement:
        alpha, beta = real_decompose(z)
        if any(beta.coeffs):
            raise ValueError(f"{z} is not real")
        return alpha

    def to_cyclotomic(self) -> CyclotomicRational:
        if self._cyc is None:
            od = order_data(self.order)
            den = 1
            for c in self.coeffs:
                den = den * c.denominator // math.gcd(den, c.denominator)
            vec = [0] * od.phi
            for c, row in zip(self.coeffs, od.c_powers):
                m = int(c * den)
                if m:
                    for i in range(od.phi):
                        vec[i] += m * row[i]
            self._cyc = CyclotomicRational._make(self.order, vec, den)
        return self._cyc

    def __repr__(self) -> str:
        return f"RealSubfieldElement({self.order}, {[str(c) for c in self.coeffs]})"

    def __eq__(self, other) -> bool:
        if isinstance(other, RealSubfieldElement):
            return self.order == other.order and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if isinstance(other, CyclotomicRational):
            return self.to_cyclotomic() == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.order, self.coeffs))

    def _wrap(self, z: CyclotomicRational) -> RealSubfieldElement:
        return RealSubfieldElement.from_cyclotomic(z)

    def _other(self, other) -> CyclotomicRational:
        if isinstance(other, RealSubfieldElement):
            return other.to_cyclotomic()
        return other

    def __add__(self, other) -> RealSubfieldElement:
        if isinstance(other, (int, Fraction)):
            return RealSubfieldElement(self.order, (self.coeffs[0] + other,) + self.coeffs[1:])
        if isinstance(other, RealSubfieldElement):
            return RealSubfieldElement(self.order, [a + b for a, b in zip(self.coeffs, other.coeffs)])
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> RealSubfieldElement:
        return RealSubfieldElement(self.order, [-a for a in self.coeffs])

    def __sub__(self, other) -> RealSubfieldElement:
        return self + (-other)

    def __rsub__(self, other) -> RealSubfieldElement:
        return (-self) + other

    def __mul__(self, other) -> RealSubfieldElement:
        if isinstance(other, (int, Fraction)):
            return RealSubfieldElement(self.order, [a * other for a in self.coeffs])
        if isinstance(other, RealSubfieldElement):
            return self._wrap(self.to_cyclotomic() * other.to_cyclotomic())
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other) -> RealSubfieldElement:
        if isinstance(other, (int, Fraction)):
            return RealSubfieldElement(self.order, [a / Fraction(other) for a in self.coeffs])
        if isinstance(other, RealSubfieldElement):
            return self._wrap(self.to_cyclotomic() / other.to_cyclotomic())
        return NotImplemented

    def __pow__(self, e: int) -> RealSubfieldElement:
        return self._wrap(self.to_cyclotomic() ** e)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def conjugates(self) -> list[float]:
        """Real values sigma_1(x), ..., sigma_{phi/2}(x)."""
        od = order_data(self.order)
        out = []
        for k in od.embed_exponents:
            c = 2 * math.cos(2 * math.pi * k / self.order)
            out.append(sum(float(a) * c ** j for j, a in enumerate(self.coeffs)))
        return out

    def __float__(self) -> float:
        return self.conjugates()[0]

    def norm(self) -> Fraction:
        return field_norm_real(self)


def real_decompose(z: CyclotomicRational) -> tuple[RealSubfieldElement, RealSubfieldElement]:
    """Write z = alpha + beta*zeta with alpha, beta in the real subfield."""
    od = z.od
    coords = [sum(r * x for r, x in zip(row, z.num)) for row in od.basis_inv]
    coords = [Fraction(c, z.den) for c in coords]
    return (RealSubfieldElement(z.order, coords[:od.half]),
            RealSubfieldElement(z.order, coords[od.half:]))


def field_norm_real(x: RealSubfieldElement) -> Fraction:
    """Norm N_{k_n/Q}: product of the phi(n)/2 real conjugates."""
    z = x.to_cyclotomic()
    od = z.od
    prod = CyclotomicRational.one(z.order)
    for k in od.embed_exponents:
        prod = prod * z.galois(k)
    if not prod.is_rational():
        raise ArithmeticError("real conjugate product is not rational")
    return prod.rational_value()


def real_generator(n: int) -> RealSubfieldElement:
    """c = zeta_n + conj(zeta_n)."""
    z = CyclotomicRational.zeta(n)
    return RealSubfieldElement.from_cyclotomic(z + z.conj())


def sqrt_element(n: int, d: int) -> CyclotomicRational:
    """Exact sqrt(d) inside Q(zeta_n) for the small cases used in worked examples."""
    z = CyclotomicRational.zeta(n)
    c = z + z.conj()
    if (n, d) in ((8, 2), (12, 3)):
        return c
    if n in (5, 10) and d == 5:
        # for n = 5, c = tau - 1 so sqrt5 = 2c + 1; for n = 10, c = tau so sqrt5 = 2c - 1
        return 2 * c + 1 if n == 5 else 2 * c - 1
    raise ValueError(f"no stored square root of {d} in order {n}")


def golden_ratio(n: int) -> CyclotomicRational:
    if n == 5:
        z = CyclotomicRational.zeta(5)
        return 1 + z + z.conj()
    if n == 10:
        z = CyclotomicRational.zeta(10)
        return z + z.conj()
    raise ValueError("golden ratio is stored only for orders 5 and 10")


@dataclass(frozen=True)
class Embedding:
    """Float Minkowski matrix: coefficient vector -> (Re, Im) of each chosen embedding."""

    order: int
    exponents: tuple[int, ...]

    def matrix(self) -> np.ndarray:
        od = order_data(self.order)
        rows = []
        for k in self.exponents:
            ang = 2 * math.pi * k / self.order
            rows.append([math.cos(ang * j) for j in range(od.phi)])
            rows.append([math.sin(ang * j) for j in range(od.phi)])
        return np.array(rows, dtype=float)

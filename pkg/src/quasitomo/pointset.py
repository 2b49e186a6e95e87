"""Finite point sets inside a translate t + O_n, and exact sign predicates."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator

import mpmath

from .cyclo import CyclotomicRational


@dataclass(frozen=True)
class FinitePointSet:
    """The set t + points, with every point an integer cyclotomic vector."""

    order: int
    points: frozenset[CyclotomicRational] = field(default_factory=frozenset)
    translation: CyclotomicRational | None = None

    def __post_init__(self):
        pts = frozenset(self.points)
        object.__setattr__(self, "points", pts)
        if self.translation is None:
            object.__setattr__(self, "translation", CyclotomicRational.zero(self.order))
        for p in pts:
            if p.order != self.order:
                raise ValueError(f"point of order {p.order} in a set of order {self.order}")
            if not p.is_integral():
                raise ValueError(f"point {p} does not have integer coefficients")

    @classmethod
    def of(cls, order: int, points: Iterable, translation: CyclotomicRational | None = None) -> FinitePointSet:
        pts = [p if isinstance(p, CyclotomicRational) else CyclotomicRational(order, p) for p in points]
        return cls(order, frozenset(pts), translation)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[CyclotomicRational]:
        return iter(self.sorted())

    def __contains__(self, z) -> bool:
        return z in self.points

    def sorted(self) -> list[CyclotomicRational]:
        return sorted(self.points, key=lambda z: z.num)

    def realized(self) -> list[CyclotomicRational]:
        """Actual plane positions t + z."""
        return [self.translation + z for z in self.sorted()]

    def is_untranslated(self) -> bool:
        return self.translation.is_zero()

    def with_points(self, points: Iterable[CyclotomicRational]) -> FinitePointSet:
        return FinitePointSet(self.order, frozenset(points), self.translation)


def centroid(points: Iterable[CyclotomicRational]) -> CyclotomicRational:
    pts = list(points)
    if not pts:
        raise ValueError("centroid of an empty set")
    acc = pts[0]
    for p in pts[1:]:
        acc = acc + p
    return acc / len(pts)


def _precise(z: CyclotomicRational) -> mpmath.mpc:
    with mpmath.workdps(80):
        w = mpmath.exp(2j * mpmath.pi / z.order)
        acc = mpmath.mpc(0)
        p = mpmath.mpc(1)
        for x in z.num:
            if x:
                acc += x * p
            p *= w
        return acc / z.den


def im_sign(w: CyclotomicRational) -> int:
    """Exact sign of Im(w) under the identity embedding."""
    if w == w.conj():
        return 0
    v = w.to_complex().imag
    if abs(v) > 1e-7 * (1 + sum(abs(x) for x in w.num) / w.den):
        return 1 if v > 0 else -1
    return 1 if _precise(w).imag > 0 else -1


def re_sign(w: CyclotomicRational) -> int:
    """Exact sign of Re(w) under the identity embedding."""
    if w == -w.conj():
        return 0
    v = w.to_complex().real
    if abs(v) > 1e-7 * (1 + sum(abs(x) for x in w.num) / w.den):
        return 1 if v > 0 else -1
    return 1 if _precise(w).real > 0 else -1


def det_sign(a: CyclotomicRational, b: CyclotomicRational) -> int:
    """Sign of the 2x2 determinant det(a, b) = Im(conj(a) b)."""
    return im_sign(a.conj() * b)


def angle(z: CyclotomicRational) -> float:
    return cmath.phase(z.to_complex()) % (2 * math.pi)

"""Discrete parallel X-rays, grids, unimodular direction pairs and switching components."""

from __future__ import annotations

import functools
import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .cyclo import CyclotomicRational, RealSubfieldElement, field_norm_real, real_decompose
from .pointset import FinitePointSet, angle, det_sign, im_sign, re_sign


class ParallelDirections(ValueError):
    pass


class Direction:
    """Parallelism class of a nonzero element of O_n.

    The representative is gcd-reduced with its angle in [0, pi). Two
    directions compare equal iff their representatives are parallel, which
    is decided exactly through the invariant rep / conj(rep).
    """

    __slots__ = ("order", "rep", "key", "angle")

    def __init__(self, rep: CyclotomicRational | Sequence[int], order: int | None = None):
        if not isinstance(rep, CyclotomicRational):
            rep = CyclotomicRational(order, rep)
        if rep.is_zero():
            raise ValueError("direction of the zero vector")
        num = list(rep.num)
        g = math.gcd(*num)
        num = [x // g for x in num]
        z = CyclotomicRational._make(rep.order, num)
        s = im_sign(z)
        if s < 0 or (s == 0 and re_sign(z) < 0):
            z = -z
        self.order = z.order
        self.rep = z
        self.key = z * z.conj().inverse()
        # a real representative has angle exactly 0; the float phase may round to just below pi
        self.angle = 0.0 if s == 0 else angle(z) % math.pi

    def __eq__(self, other) -> bool:
        return isinstance(other, Direction) and self.order == other.order and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"Direction({self.rep})"

    def is_parallel(self, z: CyclotomicRational) -> bool:
        w = z * self.rep.conj()
        return w == w.conj()


def direction(order: int, coeffs: Sequence) -> Direction:
    return Direction(CyclotomicRational(order, coeffs))


def _angle_cmp(a: Direction, b: Direction) -> int:
    # representatives have angles in [0, pi), so det(a, b) > 0 iff a comes first
    return -det_sign(a.rep, b.rep)


def sort_by_angle(dirs: Iterable[Direction]) -> list[Direction]:
    """Sort by angle in [0, pi), compared exactly."""
    ds = list(dirs)
    if len(set(ds)) != len(ds):
        raise ParallelDirections("directions are not pairwise non-parallel")
    return sorted(ds, key=functools.cmp_to_key(_angle_cmp))


def line_key(z: CyclotomicRational, u: Direction) -> CyclotomicRational:
    """w - conj(w) for w = z conj(rep); equal keys iff same line parallel to u."""
    if z.order != u.order:
        raise ValueError("orders differ")
    w = z * u.rep.conj()
    return w - w.conj()


@dataclass(frozen=True)
class XRaySnapshot:
    direction: Direction
    buckets: dict

    def __eq__(self, other) -> bool:
        return (isinstance(other, XRaySnapshot) and self.direction == other.direction
                and self.buckets == other.buckets)

    def support(self) -> frozenset:
        """Projection view: the lines hit, without multiplicities."""
        return frozenset(self.buckets)

    def total(self) -> int:
        return sum(self.buckets.values())

    def sorted_pairs(self) -> list[tuple[CyclotomicRational, int]]:
        return sorted(self.buckets.items(), key=lambda kv: (kv[0].den, kv[0].num))


def xray(F: FinitePointSet, u: Direction) -> XRaySnapshot:
    if F.order != u.order:
        raise ValueError("orders differ")
    offset = line_key(F.translation, u)
    counts = Counter(line_key(z, u) for z in F.points)
    if not offset.is_zero():
        counts = Counter({k + offset: c for k, c in counts.items()})
    return XRaySnapshot(u, dict(counts))


def same_xrays(F: FinitePointSet, G: FinitePointSet, U: Iterable[Direction]) -> bool:
    return all(xray(F, u) == xray(G, u) for u in U)


def intersect_lines(a: CyclotomicRational, k1: CyclotomicRational,
                    b: CyclotomicRational, k2: CyclotomicRational) -> CyclotomicRational:
    """Point x with line key k1 along a and k2 along b."""
    # conj(a) x - a conj(x) = k1 and conj(b) x - b conj(x) = k2
    det = a.conj() * b - a * b.conj()
    if det.is_zero():
        raise ParallelDirections("parallel lines")
    return (b * k1 - a * k2) / det


def grid(F: FinitePointSet, U: Iterable[Direction]) -> set[CyclotomicRational]:
    """Intersection over u in U of the union of the X-ray support lines of F."""
    dirs = list(U)
    if len(dirs) < 2:
        raise ValueError("a grid needs at least two directions")
    if len(set(dirs)) != len(dirs):
        raise ParallelDirections("directions are not pairwise non-parallel")
    supports = [xray(F, u).support() for u in dirs]
    a, b = dirs[0].rep, dirs[1].rep
    det_inv = (a.conj() * b - a * b.conj()).inverse()
    out = set()
    for k1 in supports[0]:
        bk1 = b * k1
        for k2 in supports[1]:
            x = (bk1 - a * k2) * det_inv
            if all(line_key(x, u) in s for u, s in zip(dirs[2:], supports[2:])):
                out.add(x)
    return out


def o_coordinates_det(o: CyclotomicRational, o2: CyclotomicRational) -> RealSubfieldElement:
    """alpha_o beta_o' - beta_o alpha_o' in the real subfield."""
    a1, b1 = real_decompose(o)
    a2, b2 = real_decompose(o2)
    return a1 * b2 - b1 * a2


def is_unimodular_pair(o: CyclotomicRational, o2: CyclotomicRational) -> bool:
    """True iff the o_n-determinant of (o, o2) is a unit of o_n."""
    if o.is_zero() or o2.is_zero():
        raise ValueError("zero vector")
    d = o_coordinates_det(o, o2)
    if d == 0:
        raise ParallelDirections("parallel inputs")
    return d.is_integral() and abs(field_norm_real(d)) == 1


def switching_pair(U: Sequence[Direction], n: int | None = None) -> tuple[FinitePointSet, FinitePointSet]:
    """Disjoint sets of size 2^(k-1) with equal X-rays in all k directions of U."""
    dirs = list(U)
    if not dirs:
        raise ValueError("need at least one direction")
    if len(set(dirs)) != len(dirs):
        raise ParallelDirections("directions are not pairwise non-parallel")
    order = n if n is not None else dirs[0].order
    zero = CyclotomicRational.zero(order)
    F, G = {zero}, {dirs[0].rep}
    for u in dirs[1:]:
        c = 1
        while True:
            o = u.rep * c
            A = F | {o + g for g in G}
            B = G | {o + f for f in F}
            if len(A) == 2 * len(F) and len(B) == 2 * len(G) and not (A & B):
                break
            c *= 2
        F, G = A, B
    return FinitePointSet(order, frozenset(F)), FinitePointSet(order, frozenset(G))

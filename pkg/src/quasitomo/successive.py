"""Choosing a second X-ray direction after the first X-ray has been seen.

Multiplying a support line of direction o by conj(o) turns it into a
horizontal line whose points share their zeta-coordinate beta in the basis
{c^j} u {c^j zeta}. Two lattice points on distinct support lines that are
collinear along o' o, with o' = -1 + q zeta, differ (after the same
multiplication) by an integer vector with alpha = -beta / q, hence by a
beta-vector of norm at least q. Taking q beyond the spread of the betas
leaves at most one point per line.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .cyclo import CyclotomicRational, RealSubfieldElement, field_norm_real, order_data, real_decompose
from .modelset import ModelSetSpec
from .pointset import FinitePointSet
from .xray import Direction, line_key


@dataclass(frozen=True)
class SecondDirectionResult:
    epsilon: Fraction
    r: float
    direction: Direction
    auxiliary: CyclotomicRational
    note: str = ""

    def __post_init__(self):
        if not 0 < self.epsilon <= Fraction(1, 2):
            raise ValueError("epsilon must lie in (0, 1/2]")
        if self.r > 0 and self.epsilon > 1 / (4 * self.r):
            raise ValueError("epsilon exceeds 1/(4r)")


def beta_vector(z: CyclotomicRational) -> np.ndarray:
    _, beta = real_decompose(z)
    return np.array([float(c) for c in beta.coeffs])


def internal_radius(F: Iterable[CyclotomicRational], u: Direction) -> float:
    """Largest distance of beta(f conj(o)) from the centroid of those vectors, inflated by 1%."""
    oc = u.rep.conj()
    pts = np.array([beta_vector(f * oc) for f in F])
    if len(pts) == 0:
        return 0.0
    c = pts.mean(axis=0)
    return 1.01 * float(np.linalg.norm(pts - c, axis=1).max())


def _direction_for(q: int, u: Direction) -> tuple[CyclotomicRational, Direction]:
    n = u.order
    aux = q * CyclotomicRational.zeta(n) - 1
    return aux, Direction(aux * u.rep)


def _from_radius(r: float, u: Direction, note: str = "") -> SecondDirectionResult:
    q = max(2, math.ceil(4 * r))
    eps = Fraction(1, q)
    aux, d = _direction_for(q, u)
    return SecondDirectionResult(eps, r, d, aux, note)


def second_direction(F: FinitePointSet | Iterable[CyclotomicRational], u: Direction) -> SecondDirectionResult:
    """A direction u' such that each u'-line meets at most one lattice point of the u-support lines."""
    pts = list(F.points if isinstance(F, FinitePointSet) else F)
    if any(p.order != u.order for p in pts):
        raise ValueError("order mismatch")
    if not pts:
        aux, d = _direction_for(2, u)
        return SecondDirectionResult(Fraction(1, 2), 0.0, d, aux, "empty set: any direction works")
    return _from_radius(internal_radius(pts, u), u)


def bounded_second_direction(spec: ModelSetSpec, R: float, u: Direction | None = None) -> SecondDirectionResult:
    """A u' that works for every subset of the model set with diameter below R."""
    if R <= 0:
        raise ValueError("R must be positive")
    n = spec.order
    if u is None:
        u = Direction(CyclotomicRational.one(n))
    od = order_data(n)
    o = u.rep
    # bound every embedding of v = (f - f') conj(o) for f, f' in the model set
    bounds = [R * abs(o.to_complex())]
    for k, win in zip(spec.star_exponents, spec.window):
        bounds.append(win.diameter() * abs(o.galois(k).to_complex()))
    exps = (1,) + spec.star_exponents
    # map from B-coordinates (alpha, beta) to (Re, Im) of each embedding
    basis = [CyclotomicRational._make(n, v) for v in od.c_powers]
    basis += [b * CyclotomicRational.zeta(n) for b in basis]
    cols = []
    for b in basis:
        col = []
        for k in exps:
            w = b.galois(k).to_complex()
            col += [w.real, w.imag]
        cols.append(col)
    inv = np.linalg.inv(np.array(cols).T)
    row_bounds = np.repeat(np.array(bounds), 2)
    coord = np.abs(inv) @ row_bounds
    spread = float(np.linalg.norm(coord[od.half:]))
    return _from_radius(1.01 * spread, u, f"diameter bound {R:g}")


def line_candidates(F: Iterable[CyclotomicRational], u: Direction, box: int) -> set[CyclotomicRational]:
    """Lattice points f + (c / D) o on the support lines, c with o_n-coordinates in [-box, box]."""
    pts = list(F)
    if not pts:
        return set()
    n = u.order
    o = u.rep
    N = RealSubfieldElement.from_cyclotomic(o * o.conj())
    D = abs(field_norm_real(N)).numerator
    od = order_data(n)
    cpows = [CyclotomicRational._make(n, v) for v in od.c_powers]
    steps = []
    for c in itertools.product(range(-box, box + 1), repeat=od.half):
        x = CyclotomicRational.zero(n)
        for a, p in zip(c, cpows):
            if a:
                x = x + a * p
        steps.append(x * o / D)
    out = set()
    for f in pts:
        for s in steps:
            g = f + s
            if g.is_integral():
                out.add(g)
    return out


def max_points_per_line(G: Iterable[CyclotomicRational], u: Direction) -> int:
    counts = Counter(line_key(g, u) for g in G)
    return max(counts.values(), default=0)

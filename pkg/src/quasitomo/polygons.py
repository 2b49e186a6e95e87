"""Lattice polygons, affinely regular witnesses, cross ratios, U-polygons and convex-set certificates."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .cyclo import CyclotomicRational, RealSubfieldElement, real_decompose
from .pointset import FinitePointSet, det_sign, im_sign
from .valuation import CrossRatioVerdict, N1, Verdict, classify_cross_ratio
from .xray import Direction, ParallelDirections, line_key, same_xrays, sort_by_angle


def _as_cyclo(order: int, v) -> CyclotomicRational:
    return v if isinstance(v, CyclotomicRational) else CyclotomicRational(order, v)


@dataclass(frozen=True)
class PolygonInPlane:
    """Strictly convex polygon with cyclically ordered exact vertices."""

    order: int
    vertices: tuple[CyclotomicRational, ...]

    def __post_init__(self):
        vs = tuple(_as_cyclo(self.order, v) for v in self.vertices)
        object.__setattr__(self, "vertices", vs)
        if len(vs) < 3:
            raise ValueError("a polygon needs at least three vertices")
        if any(v.order != self.order for v in vs):
            raise ValueError("vertex order mismatch")
        # every other vertex strictly on the inner side of each edge
        sigma = det_sign(vs[1] - vs[0], vs[2] - vs[1])
        for i, e in enumerate(self.edges()):
            for j, v in enumerate(vs):
                if j != i and j != (i + 1) % len(vs) and det_sign(e, v - vs[i]) != sigma:
                    raise ValueError("vertices do not form a strictly convex polygon")
        if sigma == 0:
            raise ValueError("degenerate polygon")

    def edges(self) -> list[CyclotomicRational]:
        vs = self.vertices
        return [vs[(i + 1) % len(vs)] - vs[i] for i in range(len(vs))]

    @property
    def orientation(self) -> int:
        e = self.edges()
        return det_sign(e[0], e[1])

    def __len__(self) -> int:
        return len(self.vertices)

    def contains(self, q: CyclotomicRational) -> bool:
        """Closed containment, decided exactly."""
        s = self.orientation
        vs = self.vertices
        for i, e in enumerate(self.edges()):
            if s * det_sign(e, q - vs[i]) < 0:
                return False
        return True

    def translate(self, t: CyclotomicRational) -> PolygonInPlane:
        return PolygonInPlane(self.order, tuple(v + t for v in self.vertices))

    def scale(self, s: CyclotomicRational | RealSubfieldElement) -> PolygonInPlane:
        if isinstance(s, RealSubfieldElement):
            s = s.to_cyclotomic()
        return PolygonInPlane(self.order, tuple(v * s for v in self.vertices))

    def centroid(self) -> CyclotomicRational:
        acc = self.vertices[0]
        for v in self.vertices[1:]:
            acc = acc + v
        return acc / len(self.vertices)


# affinely regular polygons

def affinely_regular_exists(m: int, n: int) -> bool:
    """Whether O_n contains an affinely regular m-gon."""
    if m < 3 or n < 3:
        raise ValueError("m and n must be at least 3")
    if m in (3, 4, 6) or n % m == 0:
        return True
    d = m // 2
    return m % 2 == 0 and d % 2 == 1 and n % d == 0


def affine_regular_witness(m: int, n: int) -> PolygonInPlane:
    if not affinely_regular_exists(m, n):
        raise ValueError(f"O_{n} contains no affinely regular {m}-gon")
    zn = CyclotomicRational.zeta(n)
    if m in (3, 4, 6):
        # linear map 1 -> 1, zeta_m -> zeta_n on the Z-basis {1, zeta_m}
        verts = []
        for j in range(m):
            a, b = CyclotomicRational.zeta(m, j).num
            verts.append(a + b * zn)
    elif n % m == 0:
        verts = [CyclotomicRational.zeta(n, (n // m) * j) for j in range(m)]
    else:
        d = m // 2
        g = -CyclotomicRational.zeta(n, (n // d) * ((d + 1) // 2))
        verts = [g ** j for j in range(m)]
    return PolygonInPlane(n, tuple(verts))


# cross ratios

def _det_key(a: CyclotomicRational, b: CyclotomicRational) -> CyclotomicRational:
    # 2i det(a, b); the factors 2i cancel in every ratio used here
    w = a.conj() * b
    return w - w.conj()


def cross_ratio(dirs: Sequence[Direction], presorted: bool = False) -> RealSubfieldElement:
    """Cross ratio of the slopes of four directions, ordered by increasing angle unless presorted."""
    ds = list(dirs)
    if len(ds) != 4:
        raise ValueError("cross ratio needs exactly four directions")
    if len(set(ds)) != 4:
        raise ParallelDirections("directions are not pairwise non-parallel")
    if not presorted:
        ds = sort_by_angle(ds)
    z = [d.rep for d in ds]
    num = _det_key(z[0], z[2]) * _det_key(z[1], z[3])
    den = _det_key(z[1], z[2]) * _det_key(z[0], z[3])
    value = num / den
    try:
        return RealSubfieldElement.from_cyclotomic(value)
    except ValueError as exc:
        raise ArithmeticError("cross ratio is not real") from exc


def o_det(a: CyclotomicRational, b: CyclotomicRational) -> RealSubfieldElement:
    """Determinant of (a, b) in o_n-coordinates; a positive multiple of the planar one."""
    a1, b1 = real_decompose(a)
    a2, b2 = real_decompose(b)
    return a1 * b2 - b1 * a2


# U-polygons

def is_u_polygon(P: PolygonInPlane, U: Iterable[Direction]) -> bool:
    """Every line through a vertex parallel to some u in U meets a second vertex."""
    for u in U:
        keys = [line_key(v, u) for v in P.vertices]
        seen: dict = {}
        for k in keys:
            seen[k] = seen.get(k, 0) + 1
        if any(seen[k] < 2 for k in keys):
            return False
    return True


_PAD = ([1], [0, 1], [1, 1], [-1, 1], [2, 1], [1, 2], [3, 1], [1, 3])


def _pad_directions(dirs: list[Direction], n: int) -> list[Direction]:
    for c in _PAD:
        if len(dirs) >= 3:
            break
        d = Direction(CyclotomicRational(n, c))
        if d not in dirs:
            dirs.append(d)
    return dirs


def build_u_polygon_3(O: Sequence, n: int | None = None) -> PolygonInPlane:
    """Centrally symmetric hexagon that is a U-polygon for at most three directions."""
    dirs = [o if isinstance(o, Direction) else Direction(_as_cyclo(n, o)) for o in O]
    if len(dirs) > 3:
        raise ValueError("at most three directions")
    if len(set(dirs)) != len(dirs):
        raise ParallelDirections("directions are not pairwise non-parallel")
    if not dirs and n is None:
        raise ValueError("order required when no direction is given")
    order = dirs[0].order if dirs else n
    dirs = _pad_directions(list(dirs), order)
    o1, o2, o3 = (d.rep for d in sort_by_angle(dirs))
    h = o_det(o2, o3).to_cyclotomic()
    k = o_det(o1, o3).to_cyclotomic()
    l = o_det(o1, o2).to_cyclotomic()
    zero = CyclotomicRational.zero(order)
    a, b, c = h * o1, k * o2, l * o3
    verts = (zero, a, a + b, a + b + c, b + c, c)
    P = PolygonInPlane(order, verts)
    if not is_u_polygon(P, dirs):
        raise ArithmeticError("hexagon construction failed the U-polygon test")
    return P


def _separated(w: CyclotomicRational, a: CyclotomicRational, b: CyclotomicRational,
               pts: Iterable[CyclotomicRational]) -> bool:
    """Exact check that w lies outside conv(pts), with a, b the polygon neighbours of w."""
    ea, eb = a - w, b - w
    sigma = det_sign(ea, eb)
    for s in pts:
        x = s - w
        # f(x) = sigma (det(x, eb) + det(ea, x)) is positive on the cone at w
        if sigma * im_sign(x.conj() * eb + ea.conj() * x) <= 0:
            return False
    return True


def u_polygon_switch_sets(P: PolygonInPlane, U: Sequence[Direction],
                          lam: FinitePointSet) -> tuple[FinitePointSet, FinitePointSet]:
    """Two distinct convex subsets of the point set with equal X-rays in every u in U."""
    if not is_u_polygon(P, U):
        raise ValueError("P is not a U-polygon")
    t = lam.translation
    realized = {t + z: z for z in lam.points}
    for v in P.vertices:
        if v not in realized:
            raise ValueError(f"vertex {v} is not in the point set")
    verts = P.vertices
    V = set(verts[0::2])
    V2 = set(verts[1::2])
    inside = {q for q in realized if P.contains(q)}
    C = inside - V - V2
    F1, F2 = C | V, C | V2
    for group, other, offset in ((V2, F1, 1), (V, F2, 0)):
        for i in range(offset, len(verts), 2):
            w = verts[i]
            a, b = verts[i - 1], verts[(i + 1) % len(verts)]
            if not _separated(w, a, b, other):
                raise ArithmeticError("switch set is not convex in the point set")
    A = FinitePointSet(lam.order, frozenset(realized[q] for q in F1), t)
    B = FinitePointSet(lam.order, frozenset(realized[q] for q in F2), t)
    if not same_xrays(A, B, U):
        raise ArithmeticError("switch sets do not share their X-rays")
    return A, B


# worked witnesses

SIX_DIRECTIONS = ([1], [2, 1], [1, 1], [1, 2], [0, 1], [-1, 1])
DODECAGON_HALF = ([3, 1], [3, 2], [2, 3], [1, 3], [-1, 2], [-2, 1])
OCTAGON_DIRECTIONS = ([1, -1], [1], [1, 1], [0, 1])
OCTAGON = ([1], [0, 1], [-1, 1], [-2], [-2, -1], [-1, -2], [0, -2], [1, -1])


def dodecagon_u_polygon(n: int) -> tuple[PolygonInPlane, list[Direction]]:
    """Centrally symmetric dodecagon with its six directions (convex for n in {3, 4, 5, 8})."""
    half = [CyclotomicRational(n, v) for v in DODECAGON_HALF]
    P = PolygonInPlane(n, tuple(half + [-v for v in half]))
    return P, [Direction(CyclotomicRational(n, c)) for c in SIX_DIRECTIONS]


def octagon_u_polygon(n: int = 12) -> tuple[PolygonInPlane, list[Direction]]:
    """Octagon with four directions in O_12."""
    P = PolygonInPlane(n, tuple(CyclotomicRational(n, v) for v in OCTAGON))
    return P, [Direction(CyclotomicRational(n, c)) for c in OCTAGON_DIRECTIONS]


# certificates

class CertVerdict(str, enum.Enum):
    DETERMINED = "Determined"
    NOT_DETERMINED = "NotDetermined"
    INCONCLUSIVE = "Inconclusive"


class Reason(str, enum.Enum):
    CARDINALITY_LE3 = "CardinalityLE3"
    U_POLYGON_WITNESS = "UPolygonWitness"
    N1_EXCLUDED = "N1Excluded"
    N2_EXCLUDED = "N2Excluded"
    TWO_PRIME_EXCLUDED = "TwoPrimeExcluded"
    CARD7_IN_U4Q = "Card7InU4Q"
    CROSS_RATIO_IN_EXCLUSION_SET = "CrossRatioInExclusionSet"


_VERDICT_REASON = {
    Verdict.DETERMINED_BY_N1: Reason.N1_EXCLUDED,
    Verdict.DETERMINED_BY_N2: Reason.N2_EXCLUDED,
    Verdict.DETERMINED_BY_TWO_PRIME: Reason.TWO_PRIME_EXCLUDED,
}


@dataclass(frozen=True)
class DeterminationCertificate:
    directions: tuple[Direction, ...]
    verdict: CertVerdict
    reason: Reason
    witness: PolygonInPlane | None = None
    subset: tuple[Direction, ...] | None = None
    cross_ratio: CrossRatioVerdict | None = None
    checked: tuple[CrossRatioVerdict, ...] = field(default=(), repr=False)

    def __post_init__(self):
        if self.verdict is CertVerdict.NOT_DETERMINED:
            if self.witness is None or not is_u_polygon(self.witness, self.directions):
                raise ValueError("NotDetermined requires a verified U-polygon witness")


def _candidate_witnesses(dirs: list[Direction], n: int) -> Iterable[PolygonInPlane]:
    for build in (dodecagon_u_polygon, octagon_u_polygon):
        try:
            yield build(n)[0]
        except ValueError:
            pass
    for m in range(4, 2 * n + 1, 2):
        if affinely_regular_exists(m, n):
            yield affine_regular_witness(m, n)
    for triple in itertools.combinations(dirs, 3):
        yield build_u_polygon_3(triple)


def certify_convex_determination(U: Iterable[Direction], n: int | None = None) -> DeterminationCertificate:
    """Decide, where a proven criterion applies, whether X-rays in U determine convex sets."""
    dirs = list(U)
    if len(set(dirs)) != len(dirs):
        raise ParallelDirections("directions are not pairwise non-parallel")
    order = n if n is not None else (dirs[0].order if dirs else None)
    if order is None:
        raise ValueError("order required for an empty direction set")
    if any(d.order != order for d in dirs):
        raise ValueError("direction order mismatch")
    dirs = sort_by_angle(dirs)
    key = tuple(dirs)
    if len(dirs) <= 3:
        return DeterminationCertificate(key, CertVerdict.NOT_DETERMINED, Reason.CARDINALITY_LE3,
                                        build_u_polygon_3(dirs, order))
    for P in _candidate_witnesses(dirs, order):
        if is_u_polygon(P, dirs):
            return DeterminationCertificate(key, CertVerdict.NOT_DETERMINED, Reason.U_POLYGON_WITNESS, P)
    checked = []
    all_rational = True
    for quad in itertools.combinations(dirs, 4):
        x = cross_ratio(quad)
        all_rational = all_rational and x.is_rational()
        v = classify_cross_ratio(x, order)
        checked.append(v)
        if v.determined:
            reason = _VERDICT_REASON[v.verdict]
        elif x.is_rational() and x.coeffs[0] not in N1:
            reason = Reason.N1_EXCLUDED
        else:
            continue
        return DeterminationCertificate(key, CertVerdict.DETERMINED, reason,
                                        subset=quad, cross_ratio=v, checked=tuple(checked))
    if len(dirs) >= 7 and all_rational:
        return DeterminationCertificate(key, CertVerdict.DETERMINED, Reason.CARD7_IN_U4Q,
                                        checked=tuple(checked))
    return DeterminationCertificate(key, CertVerdict.INCONCLUSIVE, Reason.CROSS_RATIO_IN_EXCLUSION_SET,
                                    checked=tuple(checked))

"""Cut-and-project cyclotomic model sets: star maps, polygon windows, generation, PV numbers, homotheties."""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .cyclo import CyclotomicRational, Embedding, RealSubfieldElement, order_data
from .pointset import FinitePointSet

DEFAULT_GUARD = 1e-9
GENERIC_SHIFT = (1e-3 / math.pi, 1e-3 / math.e)


class NonGenericConfiguration(RuntimeError):
    """A lattice point's star image falls inside the window's boundary band."""

    def __init__(self, message: str, point: CyclotomicRational | None = None,
                 suggestion: tuple[tuple[float, float], ...] | None = None):
        super().__init__(message)
        self.point = point
        self.suggestion = suggestion


class NotFound(RuntimeError):
    pass


class Membership(str, enum.Enum):
    INSIDE = "Inside"
    OUTSIDE = "Outside"
    BAND = "BoundaryBand"


@dataclass(frozen=True)
class ConvexWindow:
    """Convex polygon given by positively oriented vertices."""

    vertices: tuple[tuple[float, float], ...]

    def __post_init__(self):
        vs = tuple((float(x), float(y)) for x, y in self.vertices)
        object.__setattr__(self, "vertices", vs)
        if len(vs) < 3:
            raise ValueError("a window polygon needs at least three vertices")
        for i in range(len(vs)):
            (ax, ay), (bx, by), (cx, cy) = vs[i], vs[(i + 1) % len(vs)], vs[(i + 2) % len(vs)]
            if (bx - ax) * (cy - by) - (by - ay) * (cx - bx) <= 0:
                raise ValueError("window polygon must be strictly convex and counter-clockwise")

    @property
    def normals(self) -> np.ndarray:
        v = np.array(self.vertices)
        e = np.roll(v, -1, axis=0) - v
        nrm = np.stack([e[:, 1], -e[:, 0]], axis=1)
        return nrm / np.linalg.norm(nrm, axis=1, keepdims=True)

    @property
    def offsets(self) -> np.ndarray:
        return np.einsum("ij,ij->i", self.normals, np.array(self.vertices))

    def signed_distance(self, pts: np.ndarray) -> np.ndarray:
        """Max over edges of the outward signed distance; negative inside."""
        pts = np.asarray(pts, dtype=float).reshape(-1, 2)
        return (pts @ self.normals.T - self.offsets).max(axis=1)

    def centroid(self) -> np.ndarray:
        v = np.array(self.vertices)
        w = np.roll(v, -1, axis=0)
        cr = v[:, 0] * w[:, 1] - w[:, 0] * v[:, 1]
        area = cr.sum() / 2
        return ((v + w) * cr[:, None]).sum(axis=0) / (6 * area)

    def circumradius(self, about: Sequence[float] = (0.0, 0.0)) -> float:
        return float(np.linalg.norm(np.array(self.vertices) - np.asarray(about), axis=1).max())

    def diameter(self) -> float:
        v = np.array(self.vertices)
        return float(np.linalg.norm(v[:, None, :] - v[None, :, :], axis=2).max())


def regular_polygon(m: int, edge: float, offset: float) -> ConvexWindow:
    """Regular m-gon centred at 0 with vertices at angles offset + 2 pi j / m."""
    r = edge / (2 * math.sin(math.pi / m))
    return ConvexWindow(tuple((r * math.cos(offset + 2 * math.pi * j / m),
                               r * math.sin(offset + 2 * math.pi * j / m)) for j in range(m)))


@dataclass(frozen=True)
class ModelSetSpec:
    """Cut-and-project data: Lambda = t + {z in O_n : star(z) in W + tau}."""

    order: int
    star_exponents: tuple[int, ...] = ()
    window: tuple[ConvexWindow, ...] = ()
    translation: CyclotomicRational | None = None
    window_shift: tuple[tuple[float, float], ...] | None = None
    guard: float = DEFAULT_GUARD
    name: str | None = None

    def __post_init__(self):
        od = order_data(self.order)
        n = self.order
        exps = tuple(int(k) for k in self.star_exponents)
        object.__setattr__(self, "star_exponents", exps)
        object.__setattr__(self, "window", tuple(self.window))
        if self.translation is None:
            object.__setattr__(self, "translation", CyclotomicRational.zero(n))
        elif self.translation.order != n:
            raise ValueError("translation has the wrong order")
        if len(exps) != od.half - 1:
            raise ValueError(f"order {n} needs {od.half - 1} star exponents, got {len(exps)}")
        classes = {min(k % n, -k % n) for k in exps}
        if len(classes) != len(exps) or 1 in classes or any(math.gcd(k, n) != 1 for k in exps):
            raise ValueError("star exponents must be distinct units, not +-1, one per conjugate pair")
        if len(self.window) != len(exps):
            raise ValueError("need one window polygon per internal plane")
        shift = self.window_shift
        if shift is None:
            shift = tuple((0.0, 0.0) for _ in exps)
        shift = tuple((float(a), float(b)) for a, b in shift)
        if len(shift) != len(exps):
            raise ValueError("window shift has the wrong dimension")
        object.__setattr__(self, "window_shift", shift)

    @property
    def symmetry_order(self) -> int:
        return math.lcm(self.order, 2)

    @property
    def internal_dim(self) -> int:
        return len(self.star_exponents)

    def with_shift(self, shift: Sequence[Sequence[float]]) -> ModelSetSpec:
        return ModelSetSpec(self.order, self.star_exponents, self.window, self.translation,
                            tuple(tuple(s) for s in shift), self.guard, self.name)

    def with_translation(self, t: CyclotomicRational) -> ModelSetSpec:
        return ModelSetSpec(self.order, self.star_exponents, self.window, t,
                            self.window_shift, self.guard, self.name)

    def embedding(self) -> Embedding:
        return Embedding(self.order, (1,) + self.star_exponents)


def _preset_table() -> dict[str, tuple]:
    tau = (1 + math.sqrt(5)) / 2
    return {
        "square": (4, (), (), None),
        "triangle": (3, (), (), None),
        "ab": (8, (3,), (regular_polygon(8, 1.0, math.pi / 8),), None),
        "ttt": (5, (2,), (regular_polygon(10, tau / math.sqrt(tau + 2), math.pi / 10),), (GENERIC_SHIFT,)),
        "shield": (12, (5,), (regular_polygon(12, 1.0, math.pi / 12),), (GENERIC_SHIFT,)),
    }


PRESETS = ("square", "triangle", "ab", "ttt", "shield")


def preset(name: str, window_shift: Sequence[Sequence[float]] | None = None,
           translation: CyclotomicRational | None = None) -> ModelSetSpec:
    table = _preset_table()
    if name not in table:
        raise KeyError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
    n, exps, window, shift = table[name]
    if window_shift is not None:
        shift = tuple(tuple(s) for s in window_shift)
    return ModelSetSpec(n, exps, window, translation, shift, name=name)


def star_map(z: CyclotomicRational, spec: ModelSetSpec) -> np.ndarray:
    """Internal point of z as an array of shape (internal_dim, 2)."""
    if z.order != spec.order:
        raise ValueError(f"order mismatch: {z.order} vs {spec.order}")
    out = np.zeros((spec.internal_dim, 2))
    for j, k in enumerate(spec.star_exponents):
        w = z.galois(k).to_complex()
        out[j] = (w.real, w.imag)
    return out


def _margins(spec: ModelSetSpec, internal: np.ndarray) -> np.ndarray:
    """Signed distance to W + tau per point, worst component; shape (N,)."""
    if spec.internal_dim == 0:
        return np.full(max(1, np.asarray(internal).shape[0]), -np.inf)
    internal = np.asarray(internal, dtype=float).reshape(-1, spec.internal_dim, 2)
    cols = [win.signed_distance(internal[:, j, :] - np.asarray(spec.window_shift[j]))
            for j, win in enumerate(spec.window)]
    return np.max(np.stack(cols, axis=1), axis=1)


def window_contains(spec: ModelSetSpec, pt, guard: float | None = None) -> Membership:
    delta = spec.guard if guard is None else guard
    pt = np.asarray(pt, dtype=float)
    if pt.size != 2 * spec.internal_dim:
        raise ValueError("internal point has the wrong dimension")
    s = float(_margins(spec, pt.reshape(1, -1, 2))[0])
    if s <= -delta:
        return Membership.INSIDE
    if s >= delta:
        return Membership.OUTSIDE
    return Membership.BAND


def membership(z: CyclotomicRational, spec: ModelSetSpec) -> Membership:
    """Membership of t + z for z in O_n."""
    if not z.is_integral():
        return Membership.OUTSIDE
    return window_contains(spec, star_map(z, spec))


def _ellipsoid_points(R: np.ndarray, b: np.ndarray, h: float) -> np.ndarray:
    """Integer x with ||R x - b||^2 <= h, R upper triangular (Fincke-Pohst)."""
    d = R.shape[0]
    out: list[tuple[int, ...]] = []
    x = [0] * d
    slack = 1e-9 * (1 + h)

    def rec(i: int, rem: float) -> None:
        # residual of row i without its own coordinate
        s = b[i] - sum(R[i, j] * x[j] for j in range(i + 1, d))
        rad = math.sqrt(max(rem, 0.0)) + slack
        lo = math.ceil((s - rad) / R[i, i])
        hi = math.floor((s + rad) / R[i, i])
        if R[i, i] < 0:
            lo, hi = math.ceil((s + rad) / R[i, i]), math.floor((s - rad) / R[i, i])
        for v in range(lo, hi + 1):
            x[i] = v
            r = rem - (R[i, i] * v - s) ** 2
            if r < -slack:
                continue
            if i == 0:
                out.append(tuple(x))
            else:
                rec(i - 1, r)
        x[i] = 0

    rec(d - 1, h)
    return np.array(out, dtype=np.int64).reshape(-1, d)


def _bounding_discs(spec: ModelSetSpec) -> list[tuple[np.ndarray, float]]:
    discs = []
    for win, shift in zip(spec.window, spec.window_shift):
        c = win.centroid()
        discs.append((c + np.asarray(shift), win.circumradius(c) * (1 + 1e-9) + 1e-9))
    return discs


def candidate_coefficients(spec: ModelSetSpec, center: complex, radius: float) -> np.ndarray:
    """Integer coefficient vectors whose embedding lies in an ellipsoid covering disc x window."""
    M = spec.embedding().matrix()
    t = spec.translation.to_complex()
    c = complex(center) - t
    blocks = [(np.array([c.real, c.imag]), float(radius) * (1 + 1e-12) + 1e-12)] + _bounding_discs(spec)
    scale = np.concatenate([[1 / r, 1 / r] for _, r in blocks])
    target = np.concatenate([ctr / r for ctr, r in blocks])
    A = M * scale[:, None]
    Q, R = np.linalg.qr(A)
    return _ellipsoid_points(R, Q.T @ target, float(len(blocks)))


def classify_coefficients(spec: ModelSetSpec, coeffs: np.ndarray) -> np.ndarray:
    """Signed window margins for integer coefficient rows (vectorised star map)."""
    if spec.internal_dim == 0:
        return np.full(len(coeffs), -np.inf)
    M = Embedding(spec.order, spec.star_exponents).matrix()
    internal = (coeffs @ M.T).reshape(len(coeffs), spec.internal_dim, 2)
    return _margins(spec, internal)


def generate(spec: ModelSetSpec, center: complex | Sequence[float] = 0j, radius: float = 1.0) -> FinitePointSet:
    """All points of the model set in the closed disc of the given centre and radius."""
    if radius <= 0:
        raise ValueError("radius must be positive")
    if not isinstance(center, complex):
        center = complex(*center) if isinstance(center, (tuple, list)) else complex(center)
    cand = candidate_coefficients(spec, center, radius)
    if len(cand) == 0:
        return FinitePointSet(spec.order, frozenset(), spec.translation)
    Mp = Embedding(spec.order, (1,)).matrix()
    t = spec.translation.to_complex()
    phys = cand @ Mp.T + np.array([t.real, t.imag])
    dist = np.hypot(phys[:, 0] - center.real, phys[:, 1] - center.imag)
    cand = cand[dist <= radius + 1e-9]
    marg = classify_coefficients(spec, cand)
    band = np.abs(marg) < spec.guard
    if band.any():
        bad = CyclotomicRational._make(spec.order, [int(v) for v in cand[np.argmax(band)]])
        raise NonGenericConfiguration(
            f"star image of {bad} lies within {spec.guard:g} of the window boundary; shift tau",
            bad, suggest_shift(spec))
    keep = cand[marg <= -spec.guard]
    pts = frozenset(CyclotomicRational._make(spec.order, [int(v) for v in row]) for row in keep)
    return FinitePointSet(spec.order, pts, spec.translation)


def suggest_shift(spec: ModelSetSpec) -> tuple[tuple[float, float], ...]:
    return tuple((a + GENERIC_SHIFT[0], b + GENERIC_SHIFT[1]) for a, b in spec.window_shift)


def pv_search(n: int, coeff_bound: int = 2) -> RealSubfieldElement:
    """Smallest PV number of full degree in o_n with coefficients bounded in the c^j basis.

    Candidates are ranked by the leading embedding first, then by the largest
    conjugate modulus.
    """
    if n < 3:
        raise ValueError("order must be at least 3")
    if coeff_bound < 1:
        raise ValueError("coeff_bound must be >= 1")
    od = order_data(n)
    if od.half == 1:
        return RealSubfieldElement(n, [2])
    cs = np.array([2 * math.cos(2 * math.pi * k / n) for k in od.embed_exponents])
    powers = np.vstack([cs ** j for j in range(od.half)])  # row j holds c^j under each embedding
    rng = range(-coeff_bound, coeff_bound + 1)
    grid = np.array(list(itertools.product(rng, repeat=od.half)), dtype=float)
    vals = grid @ powers
    lead, rest = vals[:, 0], np.abs(vals[:, 1:])
    ok = (lead > 1) & (rest.max(axis=1) < 1 - 1e-9)
    if not ok.any():
        raise NotFound(f"no PV number with coefficients bounded by {coeff_bound}")
    idx = np.nonzero(ok)[0]
    order = sorted(idx, key=lambda i: (lead[i], rest[i].max()))
    for i in order:
        v = np.sort(vals[i])
        if np.all(np.diff(v) > 1e-9):
            return RealSubfieldElement(n, [int(a) for a in grid[i]])
    raise NotFound("no candidate of full degree")


def _default_pv(n: int) -> RealSubfieldElement:
    half = order_data(n).half
    bound = 1
    while (2 * bound + 3) ** half <= 2_000_000:
        bound += 1
        try:
            return pv_search(n, bound)
        except NotFound:
            pass
    return pv_search(n, bound)


@dataclass(frozen=True)
class HomothetyEmbedding:
    """h(f) = scale * f + offset mapping a finite set into the model set."""

    scale: RealSubfieldElement
    offset: CyclotomicRational
    power: int
    image: FinitePointSet
    anchor: CyclotomicRational = field(repr=False, default=None)

    def apply(self, f: CyclotomicRational) -> CyclotomicRational:
        return self.scale.to_cyclotomic() * f + self.offset


def _anchor(spec: ModelSetSpec) -> CyclotomicRational:
    """A lattice point whose star image sits well inside the window."""
    zero = CyclotomicRational.zero(spec.order)
    if spec.internal_dim == 0:
        return zero
    od = order_data(spec.order)
    box = np.array(list(itertools.product(range(-2, 3), repeat=od.phi)), dtype=np.int64)
    marg = classify_coefficients(spec, box)
    best = int(np.argmin(marg))
    m0 = float(classify_coefficients(spec, np.zeros((1, od.phi), dtype=np.int64))[0])
    if m0 <= 0.25 * marg[best]:
        return zero
    if marg[best] > -spec.guard:
        raise NotFound("no lattice point with positive window margin near the origin")
    return CyclotomicRational._make(spec.order, [int(v) for v in box[best]])


def embed_homothety(F: Iterable[CyclotomicRational], spec: ModelSetSpec, max_power: int = 400) -> HomothetyEmbedding:
    """Map F into the model set by f -> l lambda^k (f - t) + z0 + t, k minimal."""
    pts = list(F)
    if not pts:
        raise ValueError("F must be nonempty")
    n = spec.order
    t = spec.translation
    rel = [p - t for p in pts]
    l = 1
    for r in rel:
        l = math.lcm(l, r.den)
    z0 = _anchor(spec)
    lam = _default_pv(n).to_cyclotomic() if spec.internal_dim else CyclotomicRational.one(n)
    base = [r * l for r in rel]
    mult = CyclotomicRational.one(n)
    for k in range(max_power + 1):
        image = [mult * b + z0 for b in base]
        if spec.internal_dim == 0:
            states = [Membership.INSIDE] * len(image)
        else:
            states = [membership(z, spec) for z in image]
        if Membership.BAND in states:
            raise NonGenericConfiguration("homothetic image meets the window boundary band",
                                          image[states.index(Membership.BAND)], suggest_shift(spec))
        if all(s is Membership.INSIDE for s in states):
            scale_c = mult * l
            scale = RealSubfieldElement.from_cyclotomic(scale_c)
            offset = t - scale_c * t + z0
            fps = FinitePointSet(n, frozenset(image), t)
            for p, z in zip(pts, image):
                if scale_c * p + offset != t + z:
                    raise ArithmeticError("homothety does not reproduce its image")
            return HomothetyEmbedding(scale, offset, k, fps, z0)
        if spec.internal_dim == 0:
            break
        mult = mult * lam
    raise NotFound(f"no power of the PV number up to {max_power} embeds the set")


def weyl_mean(points: FinitePointSet | Iterable[CyclotomicRational], spec: ModelSetSpec) -> np.ndarray:
    """Mean of the star images; compare with the window centroid."""
    if spec.internal_dim == 0:
        raise ValueError("no internal space for orders 3, 4, 6")
    pts = list(points.points if isinstance(points, FinitePointSet) else points)
    if not pts:
        raise ValueError("empty point set")
    coeffs = np.array([p.num for p in pts], dtype=float) / np.array([[p.den] for p in pts], dtype=float)
    M = Embedding(spec.order, spec.star_exponents).matrix()
    return (coeffs @ M.T).reshape(len(pts), spec.internal_dim, 2).mean(axis=0)


def window_centroid(spec: ModelSetSpec) -> np.ndarray:
    return np.array([win.centroid() + np.asarray(s) for win, s in zip(spec.window, spec.window_shift)]).reshape(-1, 2)

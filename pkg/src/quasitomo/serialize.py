"""JSON documents for point sets, X-rays, certificates and sweep records.

Exact rationals are written as "p/q" strings so nothing passes through floats.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .cyclo import CyclotomicRational, RealSubfieldElement, order_data
from .modelset import ConvexWindow, ModelSetSpec, preset
from .pointset import FinitePointSet
from .xray import Direction, XRaySnapshot

SCHEMA_VERSION = "1"


def q_str(q: Fraction | int) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def q_parse(s: str | int) -> Fraction:
    return Fraction(str(s).strip())


def cyclo_to_json(z: CyclotomicRational) -> list[str]:
    return [q_str(c) for c in z.coeffs]


def cyclo_from_json(order: int, data: Sequence) -> CyclotomicRational:
    vals = [q_parse(x) for x in data]
    if len(vals) != order_data(order).phi:
        raise ValueError(f"expected {order_data(order).phi} coefficients, got {len(vals)}")
    return CyclotomicRational(order, vals)


def real_to_json(x: RealSubfieldElement) -> list[str]:
    return [q_str(c) for c in x.coeffs]


def parse_vector(text: str) -> list[Fraction]:
    """'1,0,-1/2' -> [1, 0, -1/2]."""
    return [q_parse(p) for p in text.split(",") if p.strip()]


def parse_vectors(text: str) -> list[list[Fraction]]:
    return [parse_vector(part) for part in text.split(";") if part.strip()]


def spec_to_json(spec: ModelSetSpec) -> dict[str, Any]:
    return {
        "order": spec.order,
        "star_exponents": list(spec.star_exponents),
        "window": [[list(v) for v in w.vertices] for w in spec.window],
        "window_shift": [list(s) for s in spec.window_shift],
        "translation": cyclo_to_json(spec.translation),
        "guard": spec.guard,
    }


def spec_from_json(data: dict[str, Any]) -> ModelSetSpec:
    n = int(data["order"])
    return ModelSetSpec(
        n,
        tuple(data.get("star_exponents", ())),
        tuple(ConvexWindow(tuple(tuple(v) for v in w)) for w in data.get("window", ())),
        cyclo_from_json(n, data["translation"]) if "translation" in data else None,
        tuple(tuple(s) for s in data["window_shift"]) if "window_shift" in data else None,
        float(data.get("guard", 1e-9)),
    )


@dataclass
class PointSetDocument:
    order: int
    points: list[list[int]]
    translation: list[str]
    preset: str | None = None
    spec: dict[str, Any] | None = None
    metadata: dict[str, Any] = field(default_factory=dict)
    schema_version: str = SCHEMA_VERSION

    def __post_init__(self):
        phi = order_data(self.order).phi
        if any(len(p) != phi for p in self.points):
            raise ValueError(f"every point needs {phi} coefficients")
        if len(self.translation) != phi:
            raise ValueError("translation has the wrong length")

    @classmethod
    def from_point_set(cls, F: FinitePointSet, preset_name: str | None = None,
                       spec: ModelSetSpec | None = None, metadata: dict | None = None) -> PointSetDocument:
        return cls(F.order, [list(p.num) for p in F.sorted()], cyclo_to_json(F.translation),
                   preset_name, spec_to_json(spec) if spec is not None and preset_name is None else None,
                   dict(metadata or {}))

    def point_set(self) -> FinitePointSet:
        pts = frozenset(CyclotomicRational._make(self.order, [int(x) for x in p]) for p in self.points)
        return FinitePointSet(self.order, pts, cyclo_from_json(self.order, self.translation))

    def model_set(self) -> ModelSetSpec | None:
        shift = self.metadata.get("window_shift")
        t = cyclo_from_json(self.order, self.translation)
        if self.preset:
            return preset(self.preset, shift, t)
        if self.spec:
            return spec_from_json(self.spec)
        return None

    def to_dict(self) -> dict[str, Any]:
        d = {
            "schema_version": self.schema_version,
            "order": self.order,
            "translation": self.translation,
            "points": self.points,
            "metadata": self.metadata,
        }
        if self.preset is not None:
            d["preset"] = self.preset
        if self.spec is not None:
            d["spec"] = self.spec
        return d

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> PointSetDocument:
        if "order" not in d or "points" not in d:
            raise ValueError("malformed point-set document")
        return cls(int(d["order"]), [[int(x) for x in p] for p in d["points"]],
                   [str(x) for x in d.get("translation", ["0"] * order_data(int(d["order"])).phi)],
                   d.get("preset"), d.get("spec"), dict(d.get("metadata", {})),
                   str(d.get("schema_version", SCHEMA_VERSION)))

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True)

    @classmethod
    def loads(cls, text: str) -> PointSetDocument:
        return cls.from_dict(json.loads(text))


def direction_to_json(u: Direction) -> list[str]:
    return cyclo_to_json(u.rep)


def xray_to_json(snap: XRaySnapshot) -> dict[str, Any]:
    return {
        "direction": direction_to_json(snap.direction),
        "lines": [[cyclo_to_json(k), c] for k, c in snap.sorted_pairs()],
    }


def certificate_to_json(cert) -> dict[str, Any]:
    out: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "directions": [direction_to_json(u) for u in cert.directions],
        "verdict": cert.verdict.value,
        "reason": cert.reason.value,
    }
    if cert.witness is not None:
        out["witness"] = [cyclo_to_json(v) for v in cert.witness.vertices]
    if cert.subset is not None:
        out["subset"] = [direction_to_json(u) for u in cert.subset]
    if cert.cross_ratio is not None:
        v = cert.cross_ratio
        out["cross_ratio"] = {
            "value": real_to_json(v.value),
            "norm": q_str(v.norm),
            "n1_member": v.n1_member,
            "n2_member": v.n2_member,
            "two_prime_ok": v.two_prime_ok,
            "verdict": v.verdict.value,
        }
    return out

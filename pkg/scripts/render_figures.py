"""SVG figures: model-set patches, switch sets of U-polygons, switching components."""

from __future__ import annotations

import argparse
from dataclasses import dataclass
from pathlib import Path

from quasitomo.modelset import embed_homothety, generate, preset
from quasitomo.polygons import PolygonInPlane, dodecagon_u_polygon, octagon_u_polygon, u_polygon_switch_sets
from quasitomo.render import render_svg
from quasitomo.xray import direction, switching_pair


@dataclass
class FigureConfig:
    out_dir: str = "figures"
    patch_radius: float = 10.0


def c(points) -> list[complex]:
    return [z.to_complex() for z in points]


def switch_figure(name: str, P: PolygonInPlane, dirs, radius: float) -> str:
    spec = preset(name)
    emb = embed_homothety(P.vertices, spec)
    Q = PolygonInPlane(spec.order, tuple(emb.apply(v) for v in P.vertices))
    lam = generate(spec, Q.centroid().to_complex(), radius)
    A, B = u_polygon_switch_sets(Q, dirs, lam)
    return render_svg(c(lam.realized()), [c(Q.vertices)], [c(A.realized()), c(B.realized())])


def run(cfg: FigureConfig) -> list[Path]:
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for name in ("ab", "ttt", "shield"):
        path = out / f"patch_{name}.svg"
        path.write_text(render_svg(c(generate(preset(name), 0j, cfg.patch_radius).realized())), encoding="utf-8")
        written.append(path)
    for name, (P, dirs) in (("ab", dodecagon_u_polygon(8)), ("shield", octagon_u_polygon(12))):
        path = out / f"switch_{name}.svg"
        path.write_text(switch_figure(name, P, dirs, 12.0), encoding="utf-8")
        written.append(path)
    dirs = [direction(8, v) for v in ([1], [1, 1], [0, 1], [-1, 1])]
    F, G = switching_pair(dirs)
    path = out / "switching_pair_o8.svg"
    path.write_text(render_svg([], [], [c(F.sorted()), c(G.sorted())]), encoding="utf-8")
    written.append(path)
    for p in written:
        print(p)
    return written


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--out-dir", default="figures")
    p.add_argument("--radius", type=float, default=10.0)
    a = p.parse_args()
    run(FigureConfig(a.out_dir, a.radius))


if __name__ == "__main__":
    main()

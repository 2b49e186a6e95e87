"""Mean star image of growing model-set patches against the window centroid."""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass, field

import numpy as np

from quasitomo.modelset import generate, preset, weyl_mean, window_centroid


@dataclass
class WeylConfig:
    preset: str = "ab"
    radii: list[float] = field(default_factory=lambda: [5.0, 10.0, 20.0, 40.0])
    center: complex = 0j


def run(cfg: WeylConfig) -> list[tuple[float, int, float]]:
    spec = preset(cfg.preset)
    target = window_centroid(spec)
    rows = []
    print(f"{'radius':>8} {'points':>8} {'|mean - centroid|':>18} {'seconds':>8}")
    for r in cfg.radii:
        t0 = time.perf_counter()
        F = generate(spec, cfg.center, r)
        gap = float(np.linalg.norm(weyl_mean(F, spec) - target))
        rows.append((r, len(F), gap))
        print(f"{r:8.1f} {len(F):8d} {gap:18.3e} {time.perf_counter() - t0:8.2f}")
    return rows


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--preset", default="ab", choices=("ab", "ttt", "shield"))
    p.add_argument("--radii", default="5,10,20,40")
    p.add_argument("--center", default="0,0", help="x,y; off-centre patches break the symmetry")
    a = p.parse_args()
    x, y = (float(v) for v in a.center.split(","))
    run(WeylConfig(a.preset, [float(r) for r in a.radii.split(",")], complex(x, y)))


if __name__ == "__main__":
    main()

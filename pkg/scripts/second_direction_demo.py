"""Reconstruct random model-set patches from two X-rays, the second chosen after the first."""

from __future__ import annotations

import argparse
import random
from dataclasses import dataclass

from quasitomo.cyclo import CyclotomicRational
from quasitomo.modelset import generate, preset
from quasitomo.pointset import FinitePointSet
from quasitomo.successive import bounded_second_direction, max_points_per_line, second_direction
from quasitomo.xray import Direction, line_key, xray


@dataclass
class SecondDirectionConfig:
    preset: str = "ab"
    trials: int = 50
    patch_radius: float = 6.0
    max_size: int = 12
    seed: int = 3


def reconstruct(F: set, candidates: set, u: Direction, v: Direction, order: int) -> set:
    """Candidates on the support lines of both X-rays; exact when each v-line holds one candidate."""
    fs = FinitePointSet(order, frozenset(F))
    su, sv = xray(fs, u).buckets, xray(fs, v).buckets
    return {g for g in candidates if line_key(g, u) in su and line_key(g, v) in sv}


def run(cfg: SecondDirectionConfig) -> int:
    spec = preset(cfg.preset)
    n = spec.order
    u = Direction(CyclotomicRational.one(n))
    rng = random.Random(cfg.seed)
    patch = sorted(generate(spec, 0j, cfg.patch_radius).points, key=lambda z: z.num)
    pool = generate(spec, 0j, cfg.patch_radius + 3).points
    ok = 0
    for _ in range(cfg.trials):
        F = set(rng.sample(patch, rng.randint(1, cfg.max_size)))
        res = second_direction(F, u)
        lines = {line_key(f, u) for f in F}
        cands = {g for g in pool if line_key(g, u) in lines}
        assert max_points_per_line(cands, res.direction) == 1
        ok += reconstruct(F, cands, u, res.direction, n) == F
    print(f"{ok}/{cfg.trials} patches of {cfg.preset} recovered from two X-rays")
    bounded = bounded_second_direction(spec, 2 * cfg.patch_radius, u)
    print(f"one direction for every subset of diameter < {2 * cfg.patch_radius:g}: "
          f"epsilon = {bounded.epsilon}, u' = {bounded.direction.rep}")
    return ok


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--preset", default="ab", choices=("ab", "ttt", "shield", "square", "triangle"))
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=3)
    a = p.parse_args()
    run(SecondDirectionConfig(a.preset, a.trials, seed=a.seed))


if __name__ == "__main__":
    main()

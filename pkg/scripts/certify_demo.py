"""Certificates for the stored direction sets and a batch of random ones."""

from __future__ import annotations

import argparse
import random
from collections import Counter
from dataclasses import dataclass

from quasitomo.catalog import norm_excluded_quadruple, rational_quadruple
from quasitomo.cyclo import CyclotomicRational, order_data
from quasitomo.polygons import certify_convex_determination, dodecagon_u_polygon, octagon_u_polygon
from quasitomo.serialize import q_str
from quasitomo.xray import Direction


@dataclass
class CertifyConfig:
    random_sets: int = 200
    seed: int = 1
    orders: tuple[int, ...] = (4, 5, 8, 12)


def describe(label: str, dirs) -> None:
    cert = certify_convex_determination(dirs)
    extra = ""
    if cert.cross_ratio is not None:
        extra = f" cross-ratio norm {q_str(cert.cross_ratio.norm)}"
    elif cert.witness is not None:
        extra = f" witness with {len(cert.witness)} vertices"
    print(f"{label:<28} {cert.verdict.value:<14} {cert.reason.value:<26}{extra}")


def run(cfg: CertifyConfig) -> Counter:
    for n in (5, 8, 10, 12):
        describe(f"norm-excluded n={n}", norm_excluded_quadruple(n))
    for name in ("U", "U'", "U''"):
        describe(f"{name} n=4", rational_quadruple(name, 4))
    describe("six directions n=4", dodecagon_u_polygon(4)[1])
    describe("octagon directions n=12", octagon_u_polygon(12)[1])
    rng = random.Random(cfg.seed)
    tally: Counter = Counter()
    for _ in range(cfg.random_sets):
        n = rng.choice(cfg.orders)
        phi = order_data(n).phi
        dirs: list[Direction] = []
        for _ in range(rng.randint(4, 7)):
            z = CyclotomicRational(n, [rng.randint(-3, 3) for _ in range(phi)])
            if not z.is_zero() and Direction(z) not in dirs:
                dirs.append(Direction(z))
        if len(dirs) >= 4:
            cert = certify_convex_determination(dirs)
            tally[(n, cert.verdict.value, cert.reason.value)] += 1
    print()
    for key, count in sorted(tally.items()):
        print(f"n={key[0]:<3} {key[1]:<14} {key[2]:<26} {count}")
    return tally


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--random-sets", type=int, default=200)
    p.add_argument("--seed", type=int, default=1)
    a = p.parse_args()
    run(CertifyConfig(a.random_sets, a.seed))


if __name__ == "__main__":
    main()

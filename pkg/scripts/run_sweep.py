"""Sweep D_m for 4 <= m <= m_max and report the rational values of f_m.

Writes one JSON line per rational value to --out (if given) and prints a summary.
"""

from __future__ import annotations

import argparse
import json
import time
from collections import Counter
from dataclasses import dataclass

from quasitomo.serialize import q_str
from quasitomo.valuation import enumerate_rational_f, explain, summarize_sweep


@dataclass
class SweepConfig:
    m_max: int = 36
    out: str | None = None


def run(cfg: SweepConfig) -> bool:
    t0 = time.perf_counter()
    records = list(enumerate_rational_f(cfg.m_max))
    s = summarize_sweep(records, cfg.m_max)
    elapsed = time.perf_counter() - t0
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            for m, d, q in records:
                fh.write(json.dumps({"m": m, "d": list(d), "q": q_str(q), "label": explain(m, d, q)}) + "\n")
    labels = Counter(explain(m, d, q) or "?" for m, d, q in records)
    print(f"m <= {cfg.m_max}: {s.count} rational values in {elapsed:.2f}s")
    print("values:", ", ".join(q_str(v) for v in sorted(s.values)))
    print("by label:", ", ".join(f"{k}={v}" for k, v in sorted(labels.items())))
    print("base solutions at m = 12:", len(s.base_at_12), "of 11")
    print("unexplained:", len(s.unexplained))
    print("ok:", s.ok)
    return s.ok


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--mmax", type=int, default=36)
    p.add_argument("--out")
    a = p.parse_args()
    raise SystemExit(0 if run(SweepConfig(a.mmax, a.out)) else 1)


if __name__ == "__main__":
    main()

"""Worked direction sets used in tests, scripts and the CLI."""

from __future__ import annotations

from .cyclo import CyclotomicRational, golden_ratio, sqrt_element
from .xray import Direction


def _dirs(n: int, reps: list[CyclotomicRational]) -> list[Direction]:
    return [Direction(r) for r in reps]


def norm_excluded_quadruple(n: int) -> list[Direction]:
    """Four directions whose cross-ratio norm falls outside N2 (n in {5, 8, 10, 12})."""
    if n == 8:
        z = CyclotomicRational.zeta(8)
        r2 = sqrt_element(8, 2)
        reps = [1 + z, (r2 - 1) + r2 * z, (-1 - r2) + z, -2 + (r2 - 1) * z]
    elif n in (5, 10):
        z5 = CyclotomicRational.zeta(n, n // 5)
        tau = golden_ratio(n)
        reps = [(1 + tau) + z5, (tau - 1) + z5, -tau + z5, 2 * tau - z5]
    elif n == 12:
        z = CyclotomicRational.zeta(12)
        reps = [CyclotomicRational.one(12), 2 + z, z, sqrt_element(12, 3) - z]
    else:
        raise ValueError("stored only for n in {5, 8, 10, 12}")
    return _dirs(n, reps)


RATIONAL_QUADRUPLES = {
    "U": ([1], [1, 1], [1, 2], [1, 5]),
    "U'": ([1], [2, 1], [0, 1], [-1, 2]),
    "U''": ([2, 1], [3, 2], [1, 1], [2, 3]),
}


def rational_quadruple(name: str, n: int) -> list[Direction]:
    """Quadruples a + b zeta_n whose sorted cross ratio is rational and outside N1."""
    return [Direction(CyclotomicRational(n, c)) for c in RATIONAL_QUADRUPLES[name]]

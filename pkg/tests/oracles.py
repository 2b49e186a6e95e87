"""Slow, independent reference implementations used as test oracles."""

from __future__ import annotations

import cmath
import itertools
import math

import numpy as np

from quasitomo.cyclo import euler_phi


def conj_embed(coeffs, n: int, k: int) -> complex:
    return sum(float(c) * cmath.exp(2j * math.pi * k * j / n) for j, c in enumerate(coeffs))


def inside_convex(pt: complex, verts, shift) -> bool:
    """Strictly inside a counter-clockwise polygon, by cross products."""
    p = pt - complex(*shift)
    vs = [complex(*v) for v in verts]
    for a, b in zip(vs, vs[1:] + vs[:1]):
        if ((b - a).conjugate() * (p - a)).imag <= 0:
            return False
    return True


def coefficient_box(spec, center: complex, radius: float) -> int:
    """Coefficient bound covering every point of the disc whose star images lie in the windows."""
    n = spec.order
    phi = euler_phi(n)
    units = [k for k in range(1, n) if math.gcd(k, n) == 1]
    # rows: all phi complex embeddings, so the matrix is invertible over C
    M = np.array([[cmath.exp(2j * math.pi * k * j / n) for j in range(phi)] for k in units])
    Minv = np.linalg.inv(M)
    bounds = []
    for k in units:
        kk = min(k, n - k)
        if kk == 1:
            bounds.append(abs(center) + radius)
        else:
            j = [min(e % n, -e % n) for e in spec.star_exponents].index(kk)
            w = spec.window[j]
            bounds.append(max(abs(complex(*v)) for v in w.vertices) + abs(complex(*spec.window_shift[j])))
    return math.ceil(float((np.abs(Minv) @ np.array(bounds)).max()) + 1e-6)


def brute_force_model_set(spec, center: complex, radius: float) -> set[tuple[int, ...]]:
    n = spec.order
    phi = euler_phi(n)
    B = coefficient_box(spec, center, radius)
    t = complex(spec.translation.to_complex())
    out = set()
    for c in itertools.product(range(-B, B + 1), repeat=phi):
        z = conj_embed(c, n, 1) + t
        if abs(z - center) > radius + 1e-9:  # closed disc
            continue
        ok = True
        for j, k in enumerate(spec.star_exponents):
            if not inside_convex(conj_embed(c, n, k), spec.window[j].vertices, spec.window_shift[j]):
                ok = False
                break
        if ok:
            out.add(c)
    return out

"""Deterministic SVG output for point sets, polygons and switching pairs."""

from __future__ import annotations

from typing import Iterable, Sequence

PALETTE = ("#d62728", "#1f77b4", "#2ca02c", "#9467bd")


def _f(x: float) -> str:
    s = f"{x:.6f}"
    return "0.000000" if s == "-0.000000" else s


def render_svg(points: Iterable[complex], polygons: Sequence[Sequence[complex]] = (),
               highlights: Sequence[Iterable[complex]] = (), size: int = 600,
               point_radius: float | None = None) -> str:
    """Points as circles, polygons as closed paths, highlight groups in distinct colours.

    Coordinates are projected to doubles only here. The y axis points up.
    """
    pts = [complex(p) for p in points]
    polys = [[complex(v) for v in poly] for poly in polygons]
    groups = [[complex(p) for p in g] for g in highlights]
    everything = pts + [v for p in polys for v in p] + [p for g in groups for p in g]
    if everything:
        xs = [p.real for p in everything]
        ys = [p.imag for p in everything]
        lo_x, hi_x, lo_y, hi_y = min(xs), max(xs), min(ys), max(ys)
    else:
        lo_x = lo_y = -1.0
        hi_x = hi_y = 1.0
    span = max(hi_x - lo_x, hi_y - lo_y, 1e-9)
    pad = 0.05 * span + 0.5
    vb = (lo_x - pad, -(hi_y + pad), span + 2 * pad, span + 2 * pad)
    r = point_radius if point_radius is not None else max(span, 1.0) / 150
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" '
        f'viewBox="{" ".join(_f(v) for v in vb)}">',
        f'<rect x="{_f(vb[0])}" y="{_f(vb[1])}" width="{_f(vb[2])}" height="{_f(vb[3])}" fill="white"/>',
    ]
    for poly in polys:
        if not poly:
            continue
        d = " ".join(("M" if i == 0 else "L") + f"{_f(v.real)},{_f(-v.imag)}" for i, v in enumerate(poly))
        lines.append(f'<path d="{d} Z" fill="none" stroke="#444444" stroke-width="{_f(r / 2)}"/>')
    for p in sorted(pts, key=lambda c: (c.real, c.imag)):
        lines.append(f'<circle cx="{_f(p.real)}" cy="{_f(-p.imag)}" r="{_f(r)}" fill="#888888"/>')
    for k, g in enumerate(groups):
        color = PALETTE[k % len(PALETTE)]
        for p in sorted(g, key=lambda c: (c.real, c.imag)):
            lines.append(f'<circle cx="{_f(p.real)}" cy="{_f(-p.imag)}" r="{_f(1.6 * r)}" '
                         f'fill="none" stroke="{color}" stroke-width="{_f(r / 2)}"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"

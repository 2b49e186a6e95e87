"""Command-line entry points."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import catalog
from .cyclo import CyclotomicRational, MAX_ORDER, order_data
from .modelset import NonGenericConfiguration, NotFound, PRESETS, embed_homothety, generate, preset
from .polygons import (CertVerdict, PolygonInPlane, build_u_polygon_3, certify_convex_determination,
                       dodecagon_u_polygon, is_u_polygon, octagon_u_polygon, u_polygon_switch_sets)
from .render import render_svg
from .serialize import (PointSetDocument, certificate_to_json, cyclo_to_json,
                        direction_to_json, parse_vectors, q_str, real_to_json, xray_to_json)
from .successive import bounded_second_direction, second_direction
from .valuation import enumerate_rational_f, explain, summarize_sweep
from .xray import Direction, ParallelDirections, grid, switching_pair, xray

EXIT_OK = 0
EXIT_NOT_DETERMINED = 1
EXIT_USAGE = 2
EXIT_NON_GENERIC = 3
EXIT_INCONCLUSIVE = 4

CATALOG = ("norm-excluded", "six", "octagon", "U", "U'", "U''")


class UsageError(Exception):
    pass


def _check_order(n: int) -> int:
    if not 3 <= n <= MAX_ORDER:
        raise UsageError(f"order must lie in 3..{MAX_ORDER} (QUASITOMO_MAX_ORDER)")
    return n


def _vec(n: int, coeffs: Sequence[Fraction]) -> CyclotomicRational:
    if len(coeffs) > order_data(n).phi:
        raise UsageError(f"too many coefficients for order {n}")
    return CyclotomicRational(n, coeffs)


def _directions(n: int, text: str | None, name: str | None) -> list[Direction]:
    if name:
        if name == "norm-excluded":
            return catalog.norm_excluded_quadruple(n)
        if name == "six":
            return dodecagon_u_polygon(n)[1]
        if name == "octagon":
            return octagon_u_polygon(n)[1]
        return catalog.rational_quadruple(name, n)
    if not text:
        raise UsageError("give --directions or --catalog")
    out = []
    for v in parse_vectors(text):
        z = _vec(n, v)
        if z.is_zero():
            raise UsageError("zero direction")
        out.append(Direction(z * z.den))
    return out


def _emit(obj, out: str | None) -> None:
    text = json.dumps(obj, indent=1, sort_keys=True)
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _load_doc(path: str) -> PointSetDocument:
    try:
        return PointSetDocument.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read point-set document {path}: {exc}") from exc


def _parse_shift(text: str | None):
    if text is None:
        return None
    return [tuple(float(x) for x in part.split(",")) for part in text.split(";") if part.strip()]


def cmd_generate(a) -> int:
    shift = _parse_shift(a.tau)
    spec = preset(a.preset, shift)
    center = complex(*[float(x) for x in a.center.split(",")]) if a.center else 0j
    try:
        F = generate(spec, center, a.radius)
    except NonGenericConfiguration as exc:
        sugg = ";".join(f"{x:.6g},{y:.6g}" for x, y in exc.suggestion or ())
        print(f"non-generic configuration: {exc}", file=sys.stderr)
        if sugg:
            print(f"try --tau {sugg}", file=sys.stderr)
        return EXIT_NON_GENERIC
    meta = {"radius": a.radius, "center": [center.real, center.imag],
            "window_shift": [list(s) for s in spec.window_shift], "count": len(F)}
    doc = PointSetDocument.from_point_set(F, a.preset, metadata=meta)
    if a.out:
        Path(a.out).write_text(doc.dumps() + "\n", encoding="utf-8")
        print(f"{len(F)} points written to {a.out}")
    else:
        print(doc.dumps())
    return EXIT_OK


def cmd_xray(a) -> int:
    doc = _load_doc(a.input)
    F = doc.point_set()
    dirs = _directions(F.order, a.directions, a.catalog)
    _emit([xray_to_json(xray(F, u)) for u in dirs], a.out)
    return EXIT_OK


def cmd_grid(a) -> int:
    doc = _load_doc(a.input)
    F = doc.point_set()
    dirs = _directions(F.order, a.directions, a.catalog)
    G = grid(F, dirs)
    pts = sorted(G, key=lambda z: (z.den, z.num))
    _emit({"order": F.order, "size": len(pts), "all_integral": all((z - F.translation).is_integral() for z in pts),
           "points": [cyclo_to_json(z) for z in pts]}, a.out)
    return EXIT_OK


def cmd_certify(a) -> int:
    n = _check_order(a.order)
    dirs = _directions(n, a.directions, a.catalog)
    cert = certify_convex_determination(dirs, n)
    _emit(certificate_to_json(cert), a.out)
    return {CertVerdict.DETERMINED: EXIT_OK, CertVerdict.NOT_DETERMINED: EXIT_NOT_DETERMINED,
            CertVerdict.INCONCLUSIVE: EXIT_INCONCLUSIVE}[cert.verdict]


def _polygon(n: int, family: str, dirs: list[Direction]) -> tuple[PolygonInPlane, list[Direction]]:
    if family == "dodecagon":
        return dodecagon_u_polygon(n)
    if family == "octagon":
        return octagon_u_polygon(n)
    return build_u_polygon_3(dirs, n), dirs


def cmd_upolygon(a) -> int:
    n = _check_order(a.order)
    dirs = _directions(n, a.directions, a.catalog) if (a.directions or a.catalog) else []
    P, own = _polygon(n, a.family, dirs)
    U = dirs or own
    ok = is_u_polygon(P, U)
    result = {"order": n, "vertices": [cyclo_to_json(v) for v in P.vertices],
              "directions": [direction_to_json(u) for u in U], "is_u_polygon": ok}
    if a.preset:
        spec = preset(a.preset)
        if spec.order != n:
            raise UsageError("preset order differs from --order")
        emb = embed_homothety(P.vertices, spec)
        Q = PolygonInPlane(n, tuple(emb.apply(v) for v in P.vertices))
        c = Q.centroid().to_complex()
        reach = max(abs(v.to_complex() - c) for v in Q.vertices)
        lam = generate(spec, c, max(a.radius, reach + 1e-6))
        F1, F2 = u_polygon_switch_sets(Q, U, lam)
        result.update({"scale": real_to_json(emb.scale), "offset": cyclo_to_json(emb.offset),
                       "embedded_vertices": [cyclo_to_json(v) for v in Q.vertices],
                       "switch_sizes": [len(F1), len(F2)],
                       "equal_xrays": all(xray(F1, u) == xray(F2, u) for u in U)})
        if a.svg:
            Path(a.svg).write_text(render_svg([z.to_complex() for z in lam.realized()],
                                              [[v.to_complex() for v in Q.vertices]],
                                              [[z.to_complex() for z in F1.realized()],
                                               [z.to_complex() for z in F2.realized()]]), encoding="utf-8")
    _emit(result, a.out)
    return EXIT_OK if ok else EXIT_NOT_DETERMINED


def cmd_switch(a) -> int:
    n = _check_order(a.order)
    dirs = _directions(n, a.directions, a.catalog)
    F, G = switching_pair(dirs, n)
    _emit({"order": n, "directions": [direction_to_json(u) for u in dirs],
           "F": [cyclo_to_json(z) for z in F.sorted()], "F_prime": [cyclo_to_json(z) for z in G.sorted()],
           "equal_xrays": all(xray(F, u) == xray(G, u) for u in dirs)}, a.out)
    if a.svg:
        Path(a.svg).write_text(render_svg([], [], [[z.to_complex() for z in F.sorted()],
                                                   [z.to_complex() for z in G.sorted()]]), encoding="utf-8")
    return EXIT_OK


def cmd_embed(a) -> int:
    spec = preset(a.preset)
    pts = [_vec(spec.order, v) for v in parse_vectors(a.points)]
    try:
        emb = embed_homothety(pts, spec)
    except NonGenericConfiguration as exc:
        print(f"non-generic configuration: {exc}", file=sys.stderr)
        return EXIT_NON_GENERIC
    except NotFound as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_NOT_DETERMINED
    _emit({"order": spec.order, "scale": real_to_json(emb.scale), "offset": cyclo_to_json(emb.offset),
           "power": emb.power, "image": [cyclo_to_json(emb.apply(p)) for p in pts]}, a.out)
    return EXIT_OK


def cmd_second_direction(a) -> int:
    if a.input:
        doc = _load_doc(a.input)
        F = doc.point_set()
        u = _directions(F.order, a.direction or "1", None)[0]
        res = second_direction(F.points, u)
    else:
        if not a.preset or a.bound is None:
            raise UsageError("give --input, or --preset with --bound")
        spec = preset(a.preset)
        u = _directions(spec.order, a.direction or "1", None)[0]
        res = bounded_second_direction(spec, a.bound, u)
    _emit({"epsilon": q_str(res.epsilon), "r": res.r, "direction": direction_to_json(res.direction),
           "auxiliary": cyclo_to_json(res.auxiliary), "note": res.note}, a.out)
    return EXIT_OK


def cmd_sweep(a) -> int:
    if not 4 <= a.mmax <= MAX_ORDER:
        raise UsageError(f"--mmax must lie in 4..{MAX_ORDER}")
    out = open(a.out, "w", encoding="utf-8") if a.out else sys.stdout
    records = []
    try:
        for m, d, q in enumerate_rational_f(a.mmax):
            records.append((m, d, q))
            out.write(json.dumps({"m": m, "d": list(d), "q": q_str(q), "label": explain(m, d, q)}) + "\n")
        s = summarize_sweep(records, a.mmax)
        out.write(json.dumps({"summary": True, "m_max": a.mmax, "count": s.count,
                              "values": sorted(q_str(v) for v in s.values),
                              "values_in_N1": s.values_in_n1, "unexplained": len(s.unexplained),
                              "base_solutions_at_12": sorted(s.base_at_12)}) + "\n")
        print(f"values ⊆ N1: {str(s.values_in_n1).lower()}", file=sys.stderr)
    finally:
        if a.out:
            out.close()
    return EXIT_OK if s.ok else 1


def cmd_render(a) -> int:
    doc = _load_doc(a.input)
    F = doc.point_set()
    n = F.order
    polys = []
    for text in a.polygon or ():
        polys.append([_vec(n, v).to_complex() for v in parse_vectors(text)])
    groups = []
    for path in a.highlight or ():
        groups.append([z.to_complex() for z in _load_doc(path).point_set().realized()])
    svg = render_svg([z.to_complex() for z in F.realized()], polys, groups)
    Path(a.out).write_text(svg, encoding="utf-8")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quasitomo", description="Discrete tomography on cyclotomic model sets.")
    sub = p.add_subparsers(dest="command", required=True)

    def dir_opts(sp, required_order: bool = False):
        if required_order:
            sp.add_argument("--order", "-n", type=int, required=True)
        sp.add_argument("--directions", "-u", help="';'-separated coefficient vectors, e.g. '1;0,1'")
        sp.add_argument("--catalog", choices=CATALOG, help="a stored direction set")
        sp.add_argument("--out", "-o")

    g = sub.add_parser("generate", help="model set points in a disc")
    g.add_argument("--preset", choices=PRESETS, required=True)
    g.add_argument("--radius", type=float, required=True)
    g.add_argument("--center", help="x,y")
    g.add_argument("--tau", help="window shift 'x,y' per internal plane, ';'-separated")
    g.add_argument("--out", "-o")
    g.set_defaults(func=cmd_generate)

    for name, fn, hlp in (("xray", cmd_xray, "X-ray histograms"), ("grid", cmd_grid, "grid of support lines")):
        s = sub.add_parser(name, help=hlp)
        s.add_argument("--input", "-i", required=True)
        dir_opts(s)
        s.set_defaults(func=fn)

    c = sub.add_parser("certify", help="convex-set determination certificate")
    dir_opts(c, True)
    c.set_defaults(func=cmd_certify)

    up = sub.add_parser("upolygon", help="check a U-polygon, optionally inside a preset model set")
    dir_opts(up, True)
    up.add_argument("--family", choices=("dodecagon", "octagon", "hexagon"), default="hexagon")
    up.add_argument("--preset", choices=PRESETS)
    up.add_argument("--radius", type=float, default=12.0)
    up.add_argument("--svg")
    up.set_defaults(func=cmd_upolygon)

    sw = sub.add_parser("switch", help="switching pair for a direction set")
    dir_opts(sw, True)
    sw.add_argument("--svg")
    sw.set_defaults(func=cmd_switch)

    e = sub.add_parser("embed", help="homothety of a finite set into a preset model set")
    e.add_argument("--preset", choices=PRESETS, required=True)
    e.add_argument("--points", required=True, help="';'-separated coefficient vectors, p/q allowed")
    e.add_argument("--out", "-o")
    e.set_defaults(func=cmd_embed)

    sd = sub.add_parser("second-direction", help="choose a second X-ray direction")
    sd.add_argument("--input", "-i")
    sd.add_argument("--direction", help="first direction, default 1")
    sd.add_argument("--preset", choices=PRESETS)
    sd.add_argument("--bound", type=float, help="diameter bound R")
    sd.add_argument("--out", "-o")
    sd.set_defaults(func=cmd_second_direction)

    sp = sub.add_parser("sweep", help="rational values of f_m over D_m")
    sp.add_argument("--mmax", type=int, default=36)
    sp.add_argument("--out", "-o")
    sp.set_defaults(func=cmd_sweep)

    r = sub.add_parser("render", help="SVG of a point-set document")
    r.add_argument("--input", "-i", required=True)
    r.add_argument("--polygon", action="append", help="';'-separated vertex coefficient vectors")
    r.add_argument("--highlight", action="append", help="point-set document to highlight")
    r.add_argument("--out", "-o", required=True)
    r.set_defaults(func=cmd_render)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ParallelDirections, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

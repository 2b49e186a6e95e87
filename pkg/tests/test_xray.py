from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from quasitomo.cyclo import CyclotomicRational as C
from quasitomo.pointset import FinitePointSet, centroid, det_sign, im_sign
from quasitomo.xray import (Direction, ParallelDirections, direction, grid, intersect_lines, is_unimodular_pair,
                            line_key, same_xrays, sort_by_angle, switching_pair, xray)
from strategies import cyclo


def float_profile(points, u: Direction) -> list[int]:
    """X-ray counts ordered by the signed offset of each line, via complex floats."""
    o = u.rep.to_complex()
    offs = Counter(round((o.conjugate() * p.to_complex()).imag / abs(o), 7) for p in points)
    return [offs[k] for k in sorted(offs)]


def exact_profile(F: FinitePointSet, u: Direction) -> list[int]:
    snap = xray(F, u)
    return [c for _, c in sorted(snap.buckets.items(), key=lambda kv: kv[0].to_complex().imag)]


def small_integral(n: int):
    return cyclo(n, rational=False, bound=3)


@st.composite
def point_sets(draw, n: int, max_size: int = 10):
    pts = draw(st.lists(small_integral(n), min_size=1, max_size=max_size))
    return FinitePointSet.of(n, pts)


@st.composite
def directions(draw, n: int, count: int):
    reps = draw(st.lists(small_integral(n).filter(lambda z: not z.is_zero()), min_size=count, max_size=count))
    ds = [Direction(r) for r in reps]
    assume(len(set(ds)) == count)
    return ds


def test_direction_normalisation():
    u = direction(4, [-2, 0])
    assert u.rep == C.one(4)
    assert direction(8, [0, -1]) == direction(8, [0, 3])
    assert direction(8, [0, 1]) != direction(8, [1])
    assert abs(direction(4, [1, 1]).angle - math.pi / 4) < 1e-12
    with pytest.raises(ValueError):
        direction(8, [0])


@given(st.sampled_from([5, 8, 12]).flatmap(lambda n: st.tuples(small_integral(n), small_integral(n))))
def test_direction_equality_is_parallelism(pair):
    a, b = pair
    assume(not a.is_zero() and not b.is_zero())
    cross = (a.to_complex().conjugate() * b.to_complex()).imag
    assert (Direction(a) == Direction(b)) == (abs(cross) < 1e-9)
    assert 0 <= Direction(a).angle < math.pi


def test_sort_by_angle_rejects_parallel():
    with pytest.raises(ParallelDirections):
        sort_by_angle([direction(4, [1]), direction(4, [2])])
    ds = sort_by_angle([direction(4, [-1, 1]), direction(4, [1]), direction(4, [0, 1])])
    assert [d.rep for d in ds] == [C.one(4), C.zeta(4), C(4, [-1, 1])]


def test_xray_example():
    F = FinitePointSet.of(8, [C.zero(8), C.one(8), C.zeta(8)])
    u = direction(8, [1])
    assert sorted(xray(F, u).buckets.values()) == [1, 2]
    assert xray(F, u).total() == 3
    assert len(xray(F, u).support()) == 2


@settings(max_examples=40)
@given(st.sampled_from([4, 5, 8, 12]).flatmap(lambda n: st.tuples(point_sets(n), directions(n, 1))))
def test_xray_matches_float_projection(data):
    F, (u,) = data
    assert exact_profile(F, u) == float_profile(F.points, u)
    assert xray(F, u).total() == len(F)


@settings(max_examples=40)
@given(st.sampled_from([4, 8, 12]).flatmap(lambda n: st.tuples(point_sets(n), directions(n, 1), st.integers(-3, 3))))
def test_xray_invariant_under_sliding(data):
    F, (u,), k = data
    G = F.with_points(p + k * u.rep for p in F)
    assert xray(F, u) == xray(G, u)


def test_translation_shifts_keys():
    t = C(8, [Fraction(1, 3)])
    F = FinitePointSet.of(8, [C.zero(8), C.zeta(8)], t)
    u = direction(8, [1])
    keys = set(xray(F, u).buckets)
    assert keys == {line_key(z + t, u) for z in F.points}


def test_line_key_example():
    u = direction(4, [1])
    assert line_key(C(4, [5, 2]), u) == line_key(C(4, [-1, 2]), u)
    assert line_key(C(4, [5, 2]), u) != line_key(C(4, [5, 3]), u)
    with pytest.raises(ValueError):
        line_key(C.zero(8), u)


@given(st.sampled_from([4, 8, 12]).flatmap(lambda n: st.tuples(small_integral(n), directions(n, 2))))
def test_intersect_lines_round_trip(data):
    x, (u, v) = data
    y = intersect_lines(u.rep, line_key(x, u), v.rep, line_key(x, v))
    assert y == x


def test_grid_example():
    F = FinitePointSet.of(4, [C.zero(4), C(4, [1, 1])])
    G = grid(F, [direction(4, [1]), direction(4, [0, 1])])
    assert G == {C.zero(4), C.one(4), C.zeta(4), C(4, [1, 1])}
    with pytest.raises(ValueError):
        grid(F, [direction(4, [1])])
    with pytest.raises(ParallelDirections):
        grid(F, [direction(4, [1]), direction(4, [3])])


@settings(max_examples=30)
@given(st.sampled_from([4, 8, 12]).flatmap(lambda n: st.tuples(point_sets(n, 6), directions(n, 3))))
def test_grid_matches_float_intersections(data):
    F, dirs = data
    G = grid(F, dirs)
    assert F.points <= G
    # oracle: every pair of support lines of the first two directions, filtered by the third
    reps = [d.rep.to_complex() for d in dirs]
    offs = []
    for o in reps:
        vals = []
        for p in F:
            h = (o.conjugate() * p.to_complex()).imag
            if all(abs(h - v) > 1e-7 for v in vals):
                vals.append(h)
        offs.append(vals)
    A = np.array([[-reps[0].imag, reps[0].real], [-reps[1].imag, reps[1].real]])
    expected = 0
    for s1 in offs[0]:
        for s2 in offs[1]:
            xr, xi = np.linalg.solve(A, [s1, s2])
            h = (reps[2].conjugate() * complex(xr, xi)).imag
            expected += any(abs(h - s) < 1e-6 for s in offs[2])
    assert len(G) == expected


def test_unimodular_examples():
    one, z = C.one(8), C.zeta(8)
    assert is_unimodular_pair(one, z)
    assert is_unimodular_pair(one, 1 + z)
    assert not is_unimodular_pair(one, 2 * z)
    c = z + z.conj()
    assert is_unimodular_pair(one, (1 + c) * z)  # 1 + sqrt2 is a unit
    with pytest.raises(ParallelDirections):
        is_unimodular_pair(one, c)
    with pytest.raises(ValueError):
        is_unimodular_pair(one, C.zero(8))


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_switching_pair_o8(k):
    dirs = [direction(8, v) for v in ([1], [1, 1], [0, 1], [-1, 1])][:k]
    F, G = switching_pair(dirs)
    assert len(F) == len(G) == 2 ** (k - 1)
    assert not (F.points & G.points)
    assert same_xrays(F, G, dirs)


@settings(max_examples=25)
@given(st.sampled_from([4, 5, 8, 12]).flatmap(lambda n: st.integers(1, 4).flatmap(lambda k: directions(n, k))))
def test_switching_pair_property(dirs):
    F, G = switching_pair(dirs)
    assert len(F) == len(G) == 2 ** (len(dirs) - 1)
    assert not (F.points & G.points)
    assert same_xrays(F, G, dirs)
    # equal X-rays force equal centroids along every direction of U
    assert all(line_key(centroid(F), u) == line_key(centroid(G), u) for u in dirs)


def test_pointset_validation():
    with pytest.raises(ValueError):
        FinitePointSet.of(8, [C(8, [Fraction(1, 2)])])
    with pytest.raises(ValueError):
        FinitePointSet.of(8, [C.one(4)])
    F = FinitePointSet.of(4, [C.one(4), C.zero(4)])
    assert len(F) == 2 and C.one(4) in F and F.is_untranslated()


@given(st.sampled_from([5, 7, 8, 12]).flatmap(lambda n: st.tuples(small_integral(n), small_integral(n))))
def test_exact_signs_match_floats(pair):
    a, b = pair
    w = a.to_complex().conjugate() * b.to_complex()
    s = det_sign(a, b)
    if abs(w.imag) > 1e-9:
        assert s == (1 if w.imag > 0 else -1)
    assert im_sign(a) == (0 if a == a.conj() else (1 if a.to_complex().imag > 0 else -1))


def test_real_direction_sorts_first():
    # -z^2 - z^3 = 1 + 2cos(2pi/5) is real, though its float image has a tiny imaginary part
    real = Direction(C(5, [0, 0, -1, -1]))
    assert real.angle == 0.0
    ds = sort_by_angle([direction(5, [0, 1]), direction(5, [0, 0, 1]), real])
    assert ds[0] == real


@given(st.sampled_from([5, 8, 12]).flatmap(lambda n: directions(n, 4)))
def test_sort_by_angle_matches_floats(dirs):
    ds = sort_by_angle(dirs)
    angs = [d.angle for d in ds]
    assert all(b - a > -1e-12 for a, b in zip(angs, angs[1:]))

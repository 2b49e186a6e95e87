from __future__ import annotations

import random
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from quasitomo.cyclo import CyclotomicRational as C
from quasitomo.modelset import generate, preset
from quasitomo.pointset import FinitePointSet
from quasitomo.successive import (SecondDirectionResult, beta_vector, bounded_second_direction, internal_radius,
                                  line_candidates, max_points_per_line, second_direction)
from quasitomo.xray import Direction, direction, line_key, xray
from strategies import cyclo


def float_max_per_line(G, u: Direction) -> int:
    o = u.rep.to_complex()
    keys = Counter(round((o.conjugate() * g.to_complex()).imag / abs(o), 6) for g in G)
    return max(keys.values(), default=0)


def test_example_n4():
    F = [C.zero(4), C(4, [1, 1])]
    res = second_direction(F, direction(4, [1]))
    assert res.epsilon == Fraction(1, 3)
    assert res.auxiliary == C(4, [-1, 3])
    assert res.direction == direction(4, [-1, 3])


def test_empty_set():
    res = second_direction([], direction(8, [1]))
    assert res.epsilon == Fraction(1, 2) and res.note


def test_result_validation():
    u = direction(4, [1])
    with pytest.raises(ValueError):
        SecondDirectionResult(Fraction(1), 0.0, u, C.one(4))
    with pytest.raises(ValueError):
        SecondDirectionResult(Fraction(1, 2), 3.0, u, C.one(4))


def test_beta_vector_examples():
    assert list(beta_vector(C(8, [3, 2]))) == [2.0, 0.0]
    assert list(beta_vector(C(8, [5]))) == [0.0, 0.0]
    assert internal_radius([C(8, [0, 1]), C(8, [0, -1])], direction(8, [1])) == pytest.approx(1.01)


@settings(max_examples=40)
@given(st.sampled_from([4, 5, 8, 12]).flatmap(
    lambda n: st.tuples(st.lists(cyclo(n, rational=False, bound=3), min_size=1, max_size=8),
                        cyclo(n, rational=False, bound=2).filter(lambda z: not z.is_zero()))))
def test_second_direction_separates_support_lines(data):
    F, o = data
    u = Direction(o)
    res = second_direction(F, u)
    assert res.epsilon <= Fraction(1, 2)
    assert res.r == 0 or res.epsilon <= 1 / (4 * res.r)
    G = line_candidates(F, u, 2)
    assert set(F) <= G
    # every candidate lies on a support line of F
    keys = {line_key(f, u) for f in F}
    assert all(line_key(g, u) in keys for g in G)
    assert max_points_per_line(G, res.direction) == 1
    assert float_max_per_line(G, res.direction) == 1


def test_line_candidates_are_lattice_points_on_lines():
    F = [C(8, [1, 2, 0, -1])]
    u = direction(8, [1, 1])
    G = line_candidates(F, u, 2)
    assert all(g.is_integral() for g in G)
    assert len(G) > 1
    assert line_candidates([], u, 2) == set()


@pytest.mark.parametrize("name,R,expected", [("ab", 5, Fraction(1, 27)), ("square", 3, Fraction(1, 13))])
def test_bounded_examples(name, R, expected):
    assert bounded_second_direction(preset(name), R).epsilon == expected


def test_bounded_rejects_nonpositive():
    with pytest.raises(ValueError):
        bounded_second_direction(preset("ab"), 0)


def test_bounded_direction_on_random_patches():
    spec = preset("ab")
    R = 4.0
    res = bounded_second_direction(spec, R)
    u = Direction(C.one(8))
    rng = random.Random(7)
    for _ in range(20):
        c = complex(rng.uniform(-20, 20), rng.uniform(-20, 20))
        patch = sorted(generate(spec, c, R / 2).points, key=lambda z: z.num)
        F = rng.sample(patch, min(len(patch), rng.randint(1, 8)))
        # lattice points of the model set on the u-support lines near F
        lines = {line_key(f, u) for f in F}
        near = [g for g in generate(spec, c, R / 2).points if line_key(g, u) in lines]
        assert max_points_per_line(near, res.direction) == 1
        assert second_direction(F, u).epsilon >= res.epsilon


def test_second_xray_reconstructs_small_set():
    F = FinitePointSet.of(8, [C.zero(8), C(8, [1, 1]), C(8, [0, 2, 1])])
    u = direction(8, [1])
    res = second_direction(F, u)
    G = line_candidates(F.points, u, 3)
    snap = xray(F, res.direction)
    # candidates whose u'-line carries a count of F are exactly F
    hits = {g for g in G if line_key(g, res.direction) in snap.buckets}
    assert hits == set(F.points)

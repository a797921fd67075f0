import random
from fractions import Fraction

import pytest

from patternforge import constructions as cons
from patternforge.errors import (DegenerateInputError, DuplicatePointError,
                                 OrderMismatchError)
from patternforge.exactnum import gaussian, one, zero, zeta
from patternforge.geom import (PointSet, collinear, find_parallelogram,
                               has_parallel_segments, max_collinear)


def _g(re, im=0):
    return gaussian(4, Fraction(re), Fraction(im))


def _xy(p):
    # conductor-4 coefficients are exactly (re, im)
    c = p.coeffs
    return c[0], c[1]


def _cross_oracle(a, b, c):
    x1, y1 = _xy(a)
    x2, y2 = _xy(b)
    x3, y3 = _xy(c)
    return (x2 - x1) * (y3 - y1) - (y2 - y1) * (x3 - x1) == 0


def test_collinear_matches_fraction_cross_product():
    rng = random.Random("cross")
    for trial in range(300):
        a = _g(Fraction(rng.randrange(-9, 10), 4),
               Fraction(rng.randrange(-9, 10), 4))
        b = _g(Fraction(rng.randrange(-9, 10), 4),
               Fraction(rng.randrange(-9, 10), 4))
        if a == b:
            continue
        if trial % 2 == 0:
            t = Fraction(rng.randrange(-6, 7), rng.randrange(1, 5))
            c = a + t * (b - a)  # planted on the line
        else:
            c = _g(Fraction(rng.randrange(-9, 10), 4),
                   Fraction(rng.randrange(-9, 10), 4))
        if c == a or c == b:
            continue
        assert collinear(a, b, c) == _cross_oracle(a, b, c)


def test_collinear_irrational_ratio():
    # points on a line whose direction ratio is a real irrational:
    # 0, (z5 + z5^4), 2*(z5 + z5^4) * (1 + i)/(1 + i) variants
    z = zeta(20, 4)  # zeta5 lifted to conductor 20
    d = z + z ** 4  # real irrational
    i4 = zeta(20, 5)  # i
    p = (1 + i4) * d
    assert collinear(zero(20), 1 + i4, p)  # same direction, irrational scale
    assert not collinear(zero(20), 1 + i4, p + 1)


def test_collinear_coincident_raises():
    with pytest.raises(DegenerateInputError):
        collinear(_g(1), _g(1), _g(2))


def _brute_max_collinear(s):
    pts = list(s)
    n = len(pts)
    if n <= 2:
        return n
    best = 2
    for i in range(n):
        for j in range(i + 1, n):
            cnt = 2
            for k in range(n):
                if k != i and k != j and collinear(pts[i], pts[j], pts[k]):
                    cnt += 1
            best = max(best, cnt)
    return best


def test_max_collinear_small_cases():
    with pytest.raises(DegenerateInputError):
        max_collinear(PointSet([], order=4))
    assert max_collinear(PointSet([_g(1)])) == 1
    assert max_collinear(PointSet([_g(1), _g(2)])) == 2
    line = PointSet([_g(k) for k in range(5)])
    assert max_collinear(line) == 5


def test_max_collinear_matches_brute_force_on_catalog_sets():
    sets = [
        cons.hex_lattice_cluster(6).output,                 # 19, lattice
        cons.hex_lattice_cluster(8).output,                 # 37, lattice
        cons.even_kgon(4, seed=5).output,                   # 24
        cons.equilateral15(seed=5).output,                  # 15
        cons.scalene14(seed=5).output,                      # 14
        cons.isosceles8("a", Fraction(1, 5)).output,        # 8, conductor 20
    ]
    for s in sets:
        assert max_collinear(s) == _brute_max_collinear(s)


def test_max_collinear_matches_brute_force_random():
    rng = random.Random("mc")
    for _ in range(25):
        pts = set()
        while len(pts) < 9:
            pts.add(_g(Fraction(rng.randrange(-4, 5), 2),
                       Fraction(rng.randrange(-4, 5), 2)))
        s = PointSet(pts)
        assert max_collinear(s) == _brute_max_collinear(s)


def _brute_parallelogram(s):
    pts = list(s)
    n = len(pts)
    from itertools import combinations
    for quad in combinations(range(n), 4):
        a, b, c, d = (pts[i] for i in quad)
        if a + c == b + d or a + b == c + d or a + d == b + c:
            return True
    return False


def test_find_parallelogram_matches_brute_force():
    rng = random.Random("para")
    found_planted = 0
    for trial in range(100):
        pts = set()
        while len(pts) < 12:
            pts.add(_g(Fraction(rng.randrange(-6, 7), 2),
                       Fraction(rng.randrange(-6, 7), 2)))
        pts = list(pts)
        if trial % 2 == 0:
            a, b, c = pts[0], pts[1], pts[2]
            d = b + c - a
            if d not in pts:
                pts[3] = d  # plant a + d = b + c
        s = PointSet(pts)
        got = find_parallelogram(s)
        assert (got is not None) == _brute_parallelogram(s)
        if got is not None:
            a, b, c, d = got
            assert a + c == b + d
            assert all(p in s for p in got)
            assert len({p.coeffs for p in got}) == 4
            found_planted += 1
    assert found_planted >= 50


def test_find_parallelogram_small_and_none():
    assert find_parallelogram(PointSet([_g(0), _g(1), _g(2)])) is None
    square = PointSet([_g(0), _g(1), _g(1, 1), _g(0, 1)])
    got = find_parallelogram(square)
    assert got is not None
    a, b, c, d = got
    assert a + c == b + d


def test_has_parallel_segments():
    # fewer than four points: vacuously false
    assert not has_parallel_segments(PointSet([_g(0), _g(1), _g(0, 1)]))
    # parallel disjoint segments without a parallelogram
    s = PointSet([_g(0), _g(1), _g(0, 3), _g(2, 3)])
    assert has_parallel_segments(s)
    assert find_parallelogram(s) is None
    # four points with no parallel pair at all
    t = PointSet([_g(0), _g(1), _g(2, 1), _g(0, 5)])
    assert not has_parallel_segments(t)
    # a parallelogram certainly has parallel segments
    square = PointSet([_g(0), _g(1), _g(1, 1), _g(0, 1)])
    assert has_parallel_segments(square)


def test_point_set_construction():
    with pytest.raises(DuplicatePointError):
        PointSet([_g(1), _g(1)])
    with pytest.raises(ValueError):
        PointSet([])  # empty needs an explicit order
    s = PointSet.from_points([zeta(4, 1), zeta(6, 1)])
    assert s.order == 12
    assert len(s) == 2
    assert zeta(4, 1) in s
    assert s.index_of(zeta(6, 1)) is not None
    with pytest.raises(OrderMismatchError):
        zeta(8, 1) in s  # 8 does not divide 12


def test_point_set_transformed_and_getitem():
    s = PointSet([_g(0), _g(1), _g(0, 1)])
    t = s.transformed(scale=_g(0, 2), offset=_g(5))
    assert len(t) == 3
    assert _g(5) in t
    assert _g(5, 2) in t  # i*2*i = -2... check: scale*1 + 5 = 5 + 2i
    assert sorted(p.coeffs for p in s) == [q.coeffs for q in s]


def test_point_set_equality_and_hash():
    a = PointSet([_g(0), _g(1)])
    b = PointSet([_g(1), _g(0)])
    assert a == b and hash(a) == hash(b)
    c = PointSet([_g(0), _g(2)])
    assert a != c

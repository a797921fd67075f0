import json
import warnings
from fractions import Fraction

import pytest

from patternforge import constructions as cons
from patternforge.errors import (AngleExcludedError, BuildCheckError,
                                 PreconditionError, ResampleBudgetError,
                                 SizeCapError)
from patternforge.exactnum import gaussian, one, zeta, zero
from patternforge.geom import PointSet, find_parallelogram, max_collinear
from patternforge.patterns import count_similar


def _gi(re, im=0):
    return gaussian(4, Fraction(re), Fraction(im))


# ---------------------------------------------------------------------------
# pattern factories
# ---------------------------------------------------------------------------

def test_pattern_factories():
    assert cons.equilateral_triangle().size == 3
    assert cons.square_pattern().size == 4
    assert cons.regular_polygon(7).size == 7
    with pytest.raises(ValueError):
        cons.regular_polygon(2)
    with pytest.raises(ValueError):
        cons.regular_polygon(121)  # conductor over the cap
    with pytest.raises(ValueError):
        cons.isosceles_triangle(Fraction(1, 2))
    with pytest.raises(ValueError):
        cons.isosceles_triangle(Fraction(1, 113))  # conductor over the cap
    with pytest.raises(PreconditionError):
        cons.scalene_triangle(z=_gi(0, 1))  # right isosceles, not scalene


# ---------------------------------------------------------------------------
# small fixed-parameter builds with known witness structure
# ---------------------------------------------------------------------------

def test_scalene5_fixed_z_full_structure():
    z = _gi(2, 1)
    r = cons.scalene5(z=z)
    assert len(r.output) == 5
    assert r.count.copies == 4
    w = z - 1 + 1 / z
    assert w == gaussian(4, Fraction(7, 5), Fraction(4, 5))
    assert w * z == _gi(2, 3)
    full = count_similar(r.pattern, r.output, full_witnesses=True)
    sets = {frozenset(r.output[i] for i in c) for c in full.copy_sets()}
    o, l = zero(4), one(4)
    assert sets == {
        frozenset((o, l, z)),
        frozenset((z, w, l)),
        frozenset((l, z, w * z)),
        frozenset((o, w, w * z)),
    }


def test_scalene5_random_seeds():
    for seed in range(3):
        r = cons.scalene5(seed=seed)
        assert len(r.output) == 5 and r.count.copies == 4
        assert max_collinear(r.output) == 2


def test_scalene14_fixed_z_points():
    z = _gi(3, 2)
    r = cons.scalene14(z=z)
    assert len(r.output) == 14
    assert r.count.copies >= 26
    w = z - 1 + 1 / z
    a1 = [zero(4), one(4), z, w, w * z]
    expected = set(a1)
    expected.update(p * z for p in a1)
    expected.add(w * z * z / (z - 1))
    expected.update(-p + w * z for p in set(expected))
    assert {p.coeffs for p in r.output} == {p.coeffs for p in expected}
    # the two intended coincidences that bring 16 down to 14
    assert w * z - z * z == 1 - z
    assert w * z - w * z * z / (z - 1) == w * z / (1 - z)


def test_scalene14_regression_seed1():
    r = cons.scalene14(seed=1)
    assert (len(r.output), r.count.copies) == (14, 26)


def test_isosceles8_variants_and_witnesses():
    for variant in ("a", "b"):
        r = cons.isosceles8(variant, Fraction(1, 5))
        assert len(r.output) == 8
        assert r.count.copies == 9
    r = cons.isosceles8("a", Fraction(1, 5))
    u = r.extras["u"]
    full = count_similar(r.pattern, r.output, full_witnesses=True)
    sets = {frozenset(r.output[i] for i in c) for c in full.copy_sets()}
    assert frozenset((zero(20), one(20), 1 + u)) in sets
    assert frozenset((u.conj(), one(20), u)) in sets  # 1/u = conj(u)


def test_isosceles8_more_angles():
    for variant, alpha in (("a", Fraction(2, 5)), ("a", Fraction(1, 10)),
                           ("b", Fraction(3, 10)), ("b", Fraction(1, 12))):
        r = cons.isosceles8(variant, alpha)
        assert r.count.copies == 9


def test_isosceles8_excluded_angles():
    with pytest.raises(AngleExcludedError, match="variant 'b'"):
        cons.isosceles8("a", Fraction(1, 12))
    with pytest.raises(AngleExcludedError, match="regular polygon"):
        cons.isosceles8("a", Fraction(1, 6))
    with pytest.raises(AngleExcludedError, match="regular polygon"):
        cons.isosceles8("b", Fraction(1, 4))
    with pytest.raises(ValueError):
        cons.isosceles8("c", Fraction(1, 5))


def test_equilateral15_exact_and_minkowski_block():
    for seed in range(3):
        r = cons.equilateral15(seed=seed)
        assert len(r.output) == 15 and r.count.copies == 29
    r = cons.equilateral15(seed=0)
    z = r.extras["z"]
    w = zeta(12, 4)
    p = [one(12), w, w * w]
    block = PointSet({-a + z * b for a in p for b in p})
    assert len(block) == 9
    assert count_similar(r.pattern, block).copies == 9


def test_even_kgon_small():
    r = cons.even_kgon(4, seed=2)
    assert (len(r.output), r.count.copies) == (24, 30)
    assert max_collinear(r.output) == 2
    with pytest.raises(ValueError):
        cons.even_kgon(5)
    with pytest.raises(ValueError):
        cons.even_kgon(2)


def test_even_kgon_warns_and_caps(monkeypatch):
    monkeypatch.setenv("PATTERNFORGE_SIZE_CAP", "100")
    with pytest.warns(UserWarning, match="baseline"):
        with pytest.raises(SizeCapError):
            cons.even_kgon(12, seed=0)


def test_pentagon120_families():
    r = cons.pentagon120(seed=5)
    assert (len(r.output), r.count.copies) == (120, 264)
    assert set(r.count.point_incidence()) == {11}
    z = r.extras["z"]
    w = zeta(20, 4)
    sqrt5 = 1 + 2 * (w + w ** 4)
    golden = (sqrt5 + 1) / 2
    wpow = [w ** j for j in range(5)]
    p = [z * wj for wj in wpow]
    a1 = [q + (sqrt5 + 3) / 2 for q in p]
    a2 = [golden * (1 - q) for q in p]
    a3 = [(w * w - 1) * z, (w * w - 1) * (w + 1)]
    penta = r.pattern
    # each rotated sum block is a 25-point set with exactly 15 pentagons
    for block in (a1, a2):
        pts = PointSet({rot * x for rot in wpow for x in block})
        assert len(pts) == 25
        assert count_similar(penta, pts).copies == 15
    # the rotated +-A3 family is a 20-point double decagon with 4 pentagons
    deca = PointSet({s * rot * x for rot in wpow for x in a3
                     for s in (one(20), -one(20))})
    assert len(deca) == 20
    assert count_similar(penta, deca).copies == 4


def test_hex_lattice_cluster_even():
    expect = {4: (7, 8), 6: (19, 66), 8: (37, 258)}
    for m, (n, s) in expect.items():
        r = cons.hex_lattice_cluster(m)
        assert (len(r.output), r.count.copies) == (n, s)
        assert max_collinear(r.output) == m - 1
    with pytest.raises(ValueError):
        cons.hex_lattice_cluster(3)


def test_hex_lattice_cluster_odd_targets():
    r = cons.hex_lattice_cluster(5)
    assert max_collinear(r.output) <= 4
    assert r.checks.ok  # targets are informational, never gating
    targets = [c for c in r.checks.claims if c.kind == "target"]
    assert {c.claim_id.rsplit(".", 1)[-1] for c in targets} == \
        {"target_size", "target_copies"}
    assert r.checks.summary()["informational"] == 2


def test_theorem3_generic():
    for k in (3, 4):
        r = cons.theorem3_generic(k=k, seed=1)
        assert len(r.output) == k * k - k + 1
        assert r.count.copies >= 2 * k - 1
    pat = cons.scalene_triangle(z=_gi(2, 1))
    r = cons.theorem3_generic(pattern=pat, z0=_gi(5, 7))
    assert len(r.output) == 7
    with pytest.raises(PreconditionError):
        cons.theorem3_generic(pattern=pat, z0=one(4))  # z0 inside pattern
    with pytest.raises(ValueError):
        cons.theorem3_generic(k=2, seed=0)


def test_minkowski_sum_generic():
    a = cons.equilateral15(seed=0).output
    b = cons.hex_lattice_cluster(4).output
    param, s = cons.minkowski_sum_generic(a, b, 4, seed=0)
    assert len(s) == 15 * 7
    assert max_collinear(s) <= 3
    assert param.attempts >= 1
    with pytest.raises(ValueError):
        cons.minkowski_sum_generic(a, b, 2, seed=0)
    with pytest.raises(PreconditionError):
        cons.minkowski_sum_generic(a, b, 3, seed=0)  # b has 3 collinear


def test_minkowski_iterate_known_counts():
    b = cons.hex_lattice_cluster(4)
    r = cons.minkowski_iterate(b.pattern, b.output, 2, 4, seed=7)
    assert (len(r.output), r.count.copies) == (49, 304)
    assert r.expected_copies == 304
    assert "growth_constant" in r.extras
    with pytest.raises(ValueError):
        cons.minkowski_iterate(b.pattern, b.output, 0, 4)


def test_minkowski_iterate_cap(monkeypatch):
    monkeypatch.setenv("PATTERNFORGE_SIZE_CAP", "100")
    e15 = cons.equilateral15(seed=0)
    with pytest.raises(SizeCapError):
        cons.minkowski_iterate(e15.pattern, e15.output, 2, 3, seed=0)


def test_pfree_q():
    tri = cons.equilateral_triangle()
    r = cons.pfree_Q(tri, tri.base, seed=3)
    assert len(r.output) == 9
    assert r.count.copies >= 6
    assert find_parallelogram(r.output) is None
    sq = cons.square_pattern()
    with pytest.raises(PreconditionError):
        cons.pfree_Q(sq, sq.base, seed=0)  # square contains a parallelogram


def test_pfree_q_strict():
    tri = cons.equilateral_triangle()
    r = cons.pfree_Q(tri, tri.base, seed=3, strict=True)
    ids = {c.claim_id for c in r.checks.claims}
    assert "build.pfree_q.no_parallel_segments" in ids
    assert r.ok


def test_pfree_iterate_depths():
    tri = cons.equilateral_triangle()
    expect = {1: (3, 1), 2: (9, 6), 3: (27, 27)}
    for m, (n, floor) in expect.items():
        r = cons.pfree_iterate(tri, m, seed=11)
        assert len(r.output) == n
        assert r.count.copies >= floor
        assert max_collinear(r.output) == 2 or n == 3
        assert find_parallelogram(r.output) is None
    with pytest.raises(ValueError):
        cons.pfree_iterate(tri, 0)


def test_pfree_iterate_cap(monkeypatch):
    monkeypatch.setenv("PATTERNFORGE_SIZE_CAP", "20")
    tri = cons.equilateral_triangle()
    with pytest.raises(SizeCapError):
        cons.pfree_iterate(tri, 3, seed=0)


def test_size_cap_env(monkeypatch):
    monkeypatch.delenv("PATTERNFORGE_SIZE_CAP", raising=False)
    assert cons.size_cap() == cons.DEFAULT_SIZE_CAP
    monkeypatch.setenv("PATTERNFORGE_SIZE_CAP", "500")
    assert cons.size_cap() == 500
    monkeypatch.setenv("PATTERNFORGE_SIZE_CAP", "abc")
    with pytest.raises(SizeCapError):
        cons.size_cap()
    monkeypatch.setenv("PATTERNFORGE_SIZE_CAP", "-1")
    with pytest.raises(SizeCapError):
        cons.size_cap()


def test_fixed_params_fail_fast():
    # a degenerate fixed parameter must raise, not silently resample
    with pytest.raises(BuildCheckError):
        cons.equilateral15(z=zeta(12, 4))  # z a cube root: rotations collide
    with pytest.raises(PreconditionError):
        cons.scalene5(z=_gi(0, 1))  # not scalene
    # z = 2 + i passes the size check but puts four points on a line
    with pytest.raises(BuildCheckError, match="max_collinear"):
        cons.scalene14(z=_gi(2, 1))


def test_build_report_metadata_serializes():
    r = cons.scalene5(seed=1)
    meta = r.metadata()
    text = json.dumps(meta, sort_keys=True)
    assert "scalene5" in text
    assert meta["expected_size"] == 5
    assert meta["checks"]["failed"] == 0


def test_build_catalog_dispatch():
    r = cons.build_catalog("scalene5", seed=1)
    assert r.recipe == "scalene5"
    with pytest.raises(KeyError):
        cons.build_catalog("nope")
    # every entry is buildable with defaults
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        for name, entry in sorted(cons.CATALOG.items()):
            rep = entry.builder()
            assert rep.ok, name

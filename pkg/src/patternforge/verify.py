"""Verification checkers and the acceptance suite.

Each checker rebuilds what it verifies and returns a VerdictLedger; the
suite stitches checkers and catalog builds into one ledger.  Sections are
independently seeded (random.Random(f"{seed}:{section}")), so a section's
claims are byte-identical whether it runs alone or as part of scope
"all".
"""

from __future__ import annotations

import math
import random
import statistics
from fractions import Fraction

from . import constructions as cons
from .errors import (BuildCheckError, PreconditionError, ResampleBudgetError,
                     SizeCapError)
from .exactnum import CycloNum, gaussian, one, zero, zeta
from .geom import PointSet, find_parallelogram, max_collinear
from .ledger import Claim, VerdictLedger
from .patterns import (Pattern, brute_force_count, count_similar,
                       subset_regular_bound)

__all__ = [
    "check_minkowski_lemma", "check_iteration_bound", "check_pfree_bounds",
    "check_k22_freeness", "run_acceptance_suite", "SCOPES", "DEFAULT_SEED",
]

DEFAULT_SEED = 20260814
SCOPES = ("tables", "lemmas", "pfree", "all", "none")


def check_minkowski_lemma(pattern: Pattern, a: PointSet, b: PointSet,
                          m: int | None = None, seed: int | None = 0,
                          rng: random.Random | None = None,
                          prefix: str = "lemma.minkowski",
                          workers: int = 1) -> VerdictLedger:
    """Verify super-multiplicativity of pattern counts under generic sums:

        I*S(A + vB) + |A||B|  >=  (I*S(A) + |A|) * (I*S(B) + |B|).
    """
    if m is None:
        m = max(max_collinear(a), max_collinear(b), 2) + 1
    rng = rng if rng is not None else random.Random(0 if seed is None else seed)
    param, s = cons.minkowski_sum_generic(a, b, m, rng=rng)
    rep_a = count_similar(pattern, a, workers=workers)
    rep_b = count_similar(pattern, b, workers=workers)
    rep_s = count_similar(pattern, s, workers=workers)
    sym = rep_a.sym_order
    led = VerdictLedger()
    led.add(Claim(f"{prefix}.size", "the generic sum has |A|*|B| points",
                  "exact", len(a) * len(b), len(s)))
    led.add(Claim(f"{prefix}.max_collinear",
                  "the generic sum keeps the collinearity bound", "upper",
                  m - 1, max_collinear(s)))
    led.add(Claim(f"{prefix}.product",
                  "weighted counts multiply under generic Minkowski sums",
                  "lower",
                  (sym * rep_a.copies + len(a)) * (sym * rep_b.copies + len(b)),
                  sym * rep_s.copies + len(s)))
    return led


def check_iteration_bound(pattern: Pattern, a: PointSet, j: int, m: int,
                          seed: int | None = 0,
                          rng: random.Random | None = None,
                          prefix: str = "lemma.iterate",
                          workers: int = 1) -> VerdictLedger:
    """Verify the j-fold iterate bound in both integer and index form."""
    rng = rng if rng is not None else random.Random(0 if seed is None else seed)
    base = count_similar(pattern, a, workers=workers)
    rep = cons.minkowski_iterate(pattern, a, j, m, rng=rng, workers=workers)
    led = VerdictLedger()
    led.add(Claim(f"{prefix}.size", "the iterate has |A|^j points", "exact",
                  len(a) ** j, len(rep.output)))
    led.add(Claim(f"{prefix}.max_collinear",
                  "the iterate keeps the collinearity bound", "upper", m - 1,
                  max_collinear(rep.output)))
    led.add(Claim(f"{prefix}.copies",
                  "the iterate meets the ((I*S+n)^j - n^j)/I floor", "lower",
                  rep.expected_copies, rep.count.copies))
    led.add(Claim(f"{prefix}.index",
                  "iteration does not lower the similarity index", "lower",
                  base.index, rep.count.index, tolerance=1e-12))
    return led


def check_pfree_bounds(pattern: Pattern, m: int, seed: int | None = 0,
                       rng: random.Random | None = None,
                       prefix: str = "pfree.iterate",
                       workers: int = 1) -> VerdictLedger:
    """Verify the parallelogram-free recursion at depth m, floor and
    ceiling together."""
    rng = rng if rng is not None else random.Random(0 if seed is None else seed)
    rep = cons.pfree_iterate(pattern, m, rng=rng, workers=workers)
    k = pattern.size
    n = len(rep.output)
    led = VerdictLedger()
    led.add(Claim(f"{prefix}.size", "the recursion yields |P|^m points",
                  "exact", k ** m, n))
    led.add(Claim(f"{prefix}.general_position",
                  "no three points are collinear", "exact", 2,
                  max_collinear(rep.output)))
    led.add(Claim(f"{prefix}.parallelogram_free",
                  "no four points form a parallelogram", "exact", True,
                  find_parallelogram(rep.output) is None))
    led.add(Claim(f"{prefix}.copies",
                  "the recursion meets the m*|P|^(m-1) floor", "lower",
                  m * k ** (m - 1), rep.count.copies))
    led.add(Claim(f"{prefix}.upper",
                  "the count respects the parallelogram-free ceiling "
                  "n^(3/2) + n", "upper",
                  cons._ceil_three_halves(n) + n, rep.count.copies))
    return led


def _has_k22(edges: set[tuple[int, int]]) -> bool:
    """Whether the bipartite graph given by directed edges contains a
    complete 2-by-2 subgraph."""
    neigh: dict[int, set[int]] = {}
    for u, v in edges:
        neigh.setdefault(u, set()).add(v)
    lefts = sorted(neigh)
    for i, u in enumerate(lefts):
        for v in lefts[i + 1:]:
            if len(neigh[u] & neigh[v]) >= 2:
                return True
    return False


def check_k22_freeness(pattern: Pattern, target: PointSet, cap: int = 200,
                       prefix: str = "pfree.k22",
                       workers: int = 1) -> VerdictLedger:
    """Verify that the anchor-pair graph of a parallelogram-free set in
    general position contains no K_{2,2}.

    Vertices are two copies of the target; (a, b) is an edge when the
    similarity sending the anchors to (a, b) maps the whole pattern into
    the target.  A K_{2,2} would force two distinct anchor pairs to span
    a parallelogram, so freeness transfers.  Edge count is the ordered
    match count, hence at least the copy count.
    """
    n = len(target)
    if n > cap:
        raise SizeCapError(f"K22 check capped at {cap} points, got {n}")
    if max_collinear(target) > 2:
        raise PreconditionError("target has three collinear points")
    if find_parallelogram(target) is not None:
        raise PreconditionError("target contains a parallelogram")
    rep = count_similar(pattern, target, full_witnesses=True,
                        workers=workers)
    i1, i2 = pattern.anchors
    edges = {(w[i1], w[i2]) for w in rep.witness_sample}
    k22_free = not _has_k22(edges)
    led = VerdictLedger()
    led.add(Claim(f"{prefix}.k22_free",
                  "no two anchor sources share two anchor targets", "exact",
                  True, k22_free))
    led.add(Claim(f"{prefix}.edges",
                  "the anchor-pair graph has at least S edges", "lower",
                  rep.copies, len(edges)))
    return led


# ---------------------------------------------------------------------------
# acceptance suite
# ---------------------------------------------------------------------------

def _index_of(copies: int, sym: int, n: int) -> float:
    return math.log(sym * copies + n) / math.log(n)


def _section_rng(seed: int, section: str) -> random.Random:
    return random.Random(f"{seed}:{section}")


def _tables_section(led: VerdictLedger, seed: int, workers: int,
                    log) -> None:
    rng = _section_rng(seed, "tables")

    # triangle table rows -------------------------------------------------
    for i in range(5):
        r = cons.scalene5(rng=rng, workers=workers)
        led.add(Claim(f"table.scalene5.s{i}.copies",
                      "five points carry exactly four scalene copies",
                      "exact", 4, r.count.copies))
    r = cons.scalene5(rng=rng, workers=workers)
    led.add(Claim("table.scalene5.size", "the row has five points", "exact",
                  5, len(r.output)))
    led.add(Claim("table.scalene5.index",
                  "the row index is log(9)/log(5)", "exact",
                  math.log(9) / math.log(5), r.count.index,
                  tolerance=1e-12))
    if log:
        log("tables: scalene5 done")

    for i in range(5):
        r = cons.scalene14(rng=rng, workers=workers)
        led.add(Claim(f"table.scalene14.s{i}.copies",
                      "fourteen points carry at least 26 scalene copies",
                      "lower", 26, r.count.copies))
    led.add(Claim("table.scalene14.size", "the row has fourteen points",
                  "exact", 14, len(r.output)))
    led.add(Claim("table.scalene14.index",
                  "the row index is at least log(40)/log(14)", "lower",
                  math.log(40) / math.log(14), r.count.index,
                  tolerance=1e-12))
    if log:
        log("tables: scalene14 done")

    for variant, alpha in (("a", Fraction(1, 5)), ("a", Fraction(2, 5)),
                           ("b", Fraction(1, 5)), ("b", Fraction(1, 10))):
        r = cons.isosceles8(variant, alpha, workers=workers)
        tag = f"{variant}_{alpha.numerator}_{alpha.denominator}"
        led.add(Claim(f"table.isosceles8.{tag}.copies",
                      "eight points carry exactly nine isosceles copies",
                      "exact", 9, r.count.copies))
    led.add(Claim("table.isosceles8.size", "the row has eight points",
                  "exact", 8, len(r.output)))
    led.add(Claim("table.isosceles8.index",
                  "the row index is log(17)/log(8)", "exact",
                  math.log(17) / math.log(8), r.count.index,
                  tolerance=1e-12))
    if log:
        log("tables: isosceles8 done")

    r15 = cons.equilateral15(rng=rng, workers=workers)
    led.add(Claim("table.equilateral15.size", "the row has fifteen points",
                  "exact", 15, len(r15.output)))
    led.add(Claim("table.equilateral15.copies",
                  "fifteen points carry exactly 29 equilateral triangles",
                  "exact", 29, r15.count.copies))
    led.add(Claim("table.equilateral15.index",
                  "the row index is log(102)/log(15)", "exact",
                  math.log(102) / math.log(15), r15.count.index,
                  tolerance=1e-12))
    if log:
        log("tables: equilateral15 done")

    # polygon table rows ---------------------------------------------------
    kgon_expect = {4: (24, 30), 6: (84, 74), 8: (208, 138), 10: (420, 222)}
    kgons: dict[int, cons.BuildReport] = {}
    for k, (nsize, ncopies) in kgon_expect.items():
        r = cons.even_kgon(k, rng=rng, workers=workers)
        kgons[k] = r
        led.add(Claim(f"table.kgon{k}.size",
                      "the rotated amalgam has (k/2)(k^2-2k+4) points",
                      "exact", nsize, len(r.output)))
        led.add(Claim(f"table.kgon{k}.copies",
                      "the rotated amalgam has at least (5k^2-6k+4)/2 "
                      "polygons", "lower", ncopies, r.count.copies))
        led.add(Claim(f"table.kgon{k}.index",
                      "the row index meets its nominal value", "lower",
                      _index_of(ncopies, k, nsize), r.count.index,
                      tolerance=1e-12))
        if log:
            log(f"tables: kgon{k} done")

    rp = cons.pentagon120(rng=rng, workers=workers)
    led.add(Claim("table.pentagon120.size", "the row has 120 points",
                  "exact", 120, len(rp.output)))
    led.add(Claim("table.pentagon120.copies",
                  "120 points carry at least 264 regular pentagons",
                  "lower", 264, rp.count.copies))
    inc = rp.count.point_incidence()
    led.add(Claim("table.pentagon120.incidence",
                  "every point lies on exactly 11 pentagons", "exact", 11,
                  inc[0] if len(set(inc)) == 1 else -1))
    led.add(Claim("table.pentagon120.index",
                  "the row index meets its nominal value", "lower",
                  _index_of(264, 5, 120), rp.count.index, tolerance=1e-12))
    if log:
        log("tables: pentagon120 done")

    # isosceles rows that factor through a regular polygon ------------------
    t_r4 = Pattern.from_points([zeta(4, 0), zeta(4, 1), zeta(4, 2)])
    t_r6 = Pattern.from_points([zeta(12, 0), zeta(12, 2), zeta(12, 4)])
    for tag, tri, k in (("t4_r4", t_r4, 4), ("t6_r6", t_r6, 6)):
        claims = subset_regular_bound(tri, cons.regular_polygon(k),
                                      kgons[k].output,
                                      claim_prefix=f"table.subset.{tag}")
        for c in claims:
            led.add(c)
    if log:
        log("tables: subset rows done")


_ORACLE_BUILDS = ("scalene5", "scalene14", "isosceles8", "equilateral15",
                  "hexball4", "amalgam3", "kgon4")


def _lemmas_section(led: VerdictLedger, seed: int, workers: int,
                    log) -> None:
    rng = _section_rng(seed, "lemmas")
    tri = cons.equilateral_triangle()
    sq = cons.square_pattern()

    # generic amalgam ------------------------------------------------------
    for k in (3, 4, 5):
        r = cons.theorem3_generic(k=k, rng=rng, workers=workers)
        led.add(Claim(f"lemma.amalgam.k{k}.size",
                      "the amalgam has k^2-k+1 points", "exact",
                      k * k - k + 1, len(r.output)))
        led.add(Claim(f"lemma.amalgam.k{k}.copies",
                      "the amalgam carries at least 2k-1 pattern copies",
                      "lower", 2 * k - 1, r.count.copies))
    if log:
        log("lemmas: amalgam done")

    # lattice cluster formulas ---------------------------------------------
    hex_builds = {}
    for m in (4, 6, 8):
        r = cons.hex_lattice_cluster(m, workers=workers)
        hex_builds[m] = r
        led.add(Claim(f"lemma.hexball.m{m}.size",
                      "the lattice ball has (3m^2-6m+4)/4 points", "exact",
                      (3 * m * m - 6 * m + 4) // 4, len(r.output)))
        led.add(Claim(f"lemma.hexball.m{m}.max_collinear",
                      "the longest lattice line has m-1 points", "exact",
                      m - 1, max_collinear(r.output)))
        led.add(Claim(f"lemma.hexball.m{m}.copies",
                      "the ball has (7m^4-28m^3+36m^2-16m)/64 triangles",
                      "exact",
                      (7 * m ** 4 - 28 * m ** 3 + 36 * m * m - 16 * m) // 64,
                      r.count.copies))
    if log:
        log("lemmas: lattice balls done")

    # Minkowski lemma, twenty operand combinations --------------------------
    e15 = cons.equilateral15(rng=rng, workers=workers)
    tri_sets = [("tri", tri.base), ("e15", e15.output),
                ("hex4", hex_builds[4].output),
                ("hex6", hex_builds[6].output)]
    combos = [(tri, a, b) for _, a in tri_sets for _, b in tri_sets]
    kg4 = cons.even_kgon(4, rng=rng, workers=workers)
    sq_sets = [("sq", sq.base), ("kgon4", kg4.output)]
    combos += [(sq, a, b) for _, a in sq_sets for _, b in sq_sets]
    names = [f"{an}+{bn}" for an, _ in tri_sets for bn, _ in tri_sets]
    names += [f"{an}+{bn}" for an, _ in sq_sets for bn, _ in sq_sets]
    for i, ((pat, a, b), nm) in enumerate(zip(combos, names)):
        sub = check_minkowski_lemma(pat, a, b, rng=rng,
                                    prefix=f"lemma.minkowski.c{i:02d}",
                                    workers=workers)
        led.merge(sub)
        if log:
            log(f"lemmas: minkowski {nm} done")

    # iteration bound -------------------------------------------------------
    led.merge(check_iteration_bound(tri, e15.output, 2, 3, rng=rng,
                                    prefix="lemma.iterate.e15_j2",
                                    workers=workers))
    led.merge(check_iteration_bound(tri, hex_builds[4].output, 2, 4, rng=rng,
                                    prefix="lemma.iterate.hex4_j2",
                                    workers=workers))
    if log:
        log("lemmas: iteration done")

    # oracle agreement ------------------------------------------------------
    builds = {
        "scalene5": cons.scalene5(rng=rng, workers=workers),
        "scalene14": cons.scalene14(rng=rng, workers=workers),
        "isosceles8": cons.isosceles8("a", Fraction(1, 5), workers=workers),
        "equilateral15": e15,
        "hexball4": hex_builds[4],
        "amalgam3": cons.theorem3_generic(k=3, rng=rng, workers=workers),
        "kgon4": kg4,
    }
    disagree = 0
    for name in _ORACLE_BUILDS:
        r = builds[name]
        if brute_force_count(r.pattern, r.output) != r.count.copies:
            disagree += 1
    led.add(Claim("lemma.oracle.catalog",
                  "exhaustive and anchored counts agree on every catalog "
                  "build", "exact", 0, disagree))
    if log:
        log("lemmas: catalog oracle done")

    agree = 0
    trials = 200
    for t in range(trials):
        pts = {zero(4), one(4)}
        while len(pts) < 10:
            pts.add(gaussian(4, Fraction(rng.randrange(-40, 41), 8),
                             Fraction(rng.randrange(-40, 41), 8)))
        if t % 2 == 0:
            # plant one similar copy through two existing points
            base = tri.base.lift(12)
            lifted = [p.lift(12) for p in pts]
            a1, a2 = lifted[0], lifted[1]
            p1, p2 = base[0], base[1]
            scale = (a2 - a1) / (p2 - p1)
            pts = set(lifted[:-1])
            pts.add(a1 + scale * (base[2] - p1))
            while len(pts) < 10:
                pts.add(gaussian(4, Fraction(rng.randrange(-40, 41), 8),
                                 Fraction(rng.randrange(-40, 41), 8)).lift(12))
        s = PointSet(pts)
        fast = count_similar(tri, s, workers=workers).copies
        if fast == brute_force_count(tri, s):
            agree += 1
    led.add(Claim("lemma.oracle.random",
                  "exhaustive and anchored counts agree on random sets",
                  "exact", trials, agree))
    if log:
        log("lemmas: random oracle done")


def _pfree_section(led: VerdictLedger, seed: int, workers: int,
                   log) -> None:
    rng = _section_rng(seed, "pfree")
    tri = cons.equilateral_triangle()
    for m in (2, 3, 4):
        led.merge(check_pfree_bounds(tri, m, rng=rng,
                                     prefix=f"pfree.iterate.m{m}",
                                     workers=workers))
        if log:
            log(f"pfree: depth {m} done")
    r3 = cons.pfree_iterate(tri, 3, rng=rng, workers=workers)
    led.merge(check_k22_freeness(tri, r3.output, prefix="pfree.k22.m3",
                                 workers=workers))
    if log:
        log("pfree: K22 done")


_SWEEP_RECIPES = ("scalene5", "scalene14", "equilateral15", "amalgam3")


def _genericity_section(led: VerdictLedger, seed: int, workers: int,
                        log) -> None:
    rng = _section_rng(seed, "genericity")
    escapes = 0
    resamples: list[int] = []
    for i in range(100):
        recipe = _SWEEP_RECIPES[i % len(_SWEEP_RECIPES)]
        sub = random.Random(rng.randrange(2 ** 32))
        try:
            if recipe == "scalene5":
                r = cons.scalene5(rng=sub, workers=workers)
            elif recipe == "scalene14":
                r = cons.scalene14(rng=sub, workers=workers)
            elif recipe == "equilateral15":
                r = cons.equilateral15(rng=sub, workers=workers)
            else:
                r = cons.theorem3_generic(k=3, rng=sub, workers=workers)
            resamples.append(r.resamples)
            if not r.ok:
                escapes += 1
        except (ResampleBudgetError, BuildCheckError):
            escapes += 1
    led.add(Claim("genericity.escapes",
                  "every sampled build verifies within its budget", "exact",
                  0, escapes))
    med = statistics.median(resamples) if resamples else float("inf")
    led.add(Claim("genericity.median_resamples",
                  "sampled parameters are generic almost always", "upper",
                  2.0, med))
    if log:
        log("genericity: sweep done")


def run_acceptance_suite(scope: str = "all", seed: int = DEFAULT_SEED,
                         workers: int = 1, log=None) -> VerdictLedger:
    """Run the verification sections selected by scope.

    Scopes: "tables" (row-by-row checks of the published tallies),
    "lemmas" (amalgam, lattice, Minkowski, iteration, oracle agreement),
    "pfree" (parallelogram-free recursion and K22 transfer), "all"
    (everything plus the genericity sweep), "none" (empty ledger).
    """
    if scope not in SCOPES:
        raise ValueError(f"scope must be one of {SCOPES}, got {scope!r}")
    led = VerdictLedger()
    if scope in ("tables", "all"):
        _tables_section(led, seed, workers, log)
    if scope in ("lemmas", "all"):
        _lemmas_section(led, seed, workers, log)
    if scope in ("pfree", "all"):
        _pfree_section(led, seed, workers, log)
    if scope == "all":
        _genericity_section(led, seed, workers, log)
    return led

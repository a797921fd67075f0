"""Catalog of point-set constructions rich in similar copies of a pattern.

Every recipe follows build-or-reject: after assembling a candidate set it
verifies the advertised size, the collinearity restriction, and the
advertised copy count exactly, and either returns a BuildReport whose
checks all pass or raises.  Randomized recipes draw their free parameter
from the Gaussian rationals (numerators and denominators bounded by a
height, default 97) and resample on a failed check; deterministic recipes
raise BuildCheckError instead.

Conductor policy: a recipe needing k-th roots of unity works in
Q(zeta_M) with M = lcm(4, k), so that the sampled Gaussian rationals and
the construction's roots of unity share one field.  All catalog recipes
fit in M <= 40; conductors are capped at 120.
"""

from __future__ import annotations

import math
import os
import random
import warnings
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable, Sequence

from .errors import (AngleExcludedError, BuildCheckError, PreconditionError,
                     ResampleBudgetError, SizeCapError)
from .exactnum import (CycloNum, common_order, gaussian, one, rational, zeta,
                       zero)
from .geom import PointSet, find_parallelogram, has_parallel_segments, \
    max_collinear
from .ledger import Claim, VerdictLedger
from .patterns import CountReport, Pattern, count_similar

__all__ = [
    "GenericParam", "BuildReport", "DEFAULT_HEIGHT", "DEFAULT_BUDGET",
    "size_cap", "equilateral_triangle", "square_pattern", "regular_polygon",
    "scalene_triangle", "isosceles_triangle", "theorem3_generic", "scalene5",
    "scalene14", "isosceles8", "equilateral15", "even_kgon", "pentagon120",
    "hex_lattice_cluster", "minkowski_sum_generic", "minkowski_iterate",
    "pfree_Q", "pfree_iterate", "CATALOG", "CatalogEntry", "build_catalog",
]

DEFAULT_HEIGHT = 97
DEFAULT_BUDGET = 50
DEFAULT_SIZE_CAP = 10 ** 6
MAX_CONDUCTOR = 120


def size_cap() -> int:
    """Point-count cap for iterated builds; PATTERNFORGE_SIZE_CAP overrides."""
    raw = os.environ.get("PATTERNFORGE_SIZE_CAP")
    if raw is None:
        return DEFAULT_SIZE_CAP
    try:
        value = int(raw)
    except ValueError as exc:
        raise SizeCapError(f"PATTERNFORGE_SIZE_CAP={raw!r} is not an integer") \
            from exc
    if value < 1:
        raise SizeCapError("PATTERNFORGE_SIZE_CAP must be positive")
    return value


@dataclass(frozen=True)
class GenericParam:
    """A sampled generic parameter and the effort spent obtaining it."""

    value: CycloNum
    height: int
    attempts: int


@dataclass
class BuildReport:
    """A constructed set together with its verified claims."""

    recipe: str
    params: dict
    seed: int | None
    resamples: int
    output: PointSet
    pattern: Pattern | None
    expected_size: int
    expected_copies: int | None
    copies_kind: str
    checks: VerdictLedger
    count: CountReport | None
    extras: dict = dc_field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.checks.ok

    def metadata(self) -> dict:
        meta = {
            "recipe": self.recipe,
            "params": {k: _plain(v) for k, v in self.params.items()},
            "seed": self.seed,
            "resamples": self.resamples,
            "expected_size": self.expected_size,
            "copies_kind": self.copies_kind,
            "expected_copies": self.expected_copies,
            "checks": self.checks.summary(),
        }
        if self.count is not None:
            meta["copies"] = self.count.copies
            meta["sym_order"] = self.count.sym_order
            meta["index"] = self.count.index
        extras = {k: _plain(v) for k, v in self.extras.items()
                  if isinstance(v, (int, float, str, bool, Fraction, CycloNum))}
        if extras:
            meta["extras"] = extras
        return meta

    def summary_line(self) -> str:
        s = self.checks.summary()
        cnt = "" if self.count is None else \
            f" copies={self.count.copies} index={self.count.index:.6f}"
        return (f"{self.recipe}: n={len(self.output)} "
                f"conductor={self.output.order}{cnt} "
                f"checks={s['passed']}/{s['checked']} "
                f"resamples={self.resamples}")


def _plain(v):
    if isinstance(v, CycloNum):
        return v.to_text()
    if isinstance(v, Fraction):
        return str(v)
    return v


# ---------------------------------------------------------------------------
# sampling and shared check helpers
# ---------------------------------------------------------------------------

def _sample_fraction(rng: random.Random, height: int) -> Fraction:
    num = 0
    while num == 0:
        num = rng.randrange(-height, height + 1)
    den = rng.randrange(1, height + 1)
    return Fraction(num, den)


def _sample_gaussian(rng: random.Random, order: int,
                     height: int) -> CycloNum:
    """A Gaussian rational with nonzero imaginary part inside Q(zeta_order)."""
    re = _sample_fraction(rng, height)
    im = _sample_fraction(rng, height)
    return gaussian(order, re, im)


def _rng_for(seed: int | None, rng: random.Random | None) -> random.Random:
    if rng is not None:
        return rng
    return random.Random(0 if seed is None else seed)


def _size_claim(prefix: str, s: PointSet, expected: int) -> Claim:
    return Claim(f"{prefix}.size", "the construction has its nominal size",
                 "exact", expected, len(s))


def _collinear_claim(prefix: str, s: PointSet, bound: int,
                     exact: bool) -> Claim:
    kind = "exact" if exact else "upper"
    what = ("largest collinear subset has exactly the nominal size" if exact
            else "no forbidden collinear subset appears")
    return Claim(f"{prefix}.max_collinear", what, kind, bound,
                 max_collinear(s))


def _copies_claim(prefix: str, report: CountReport, expected: int,
                  kind: str) -> Claim:
    what = ("the advertised copy count is exact" if kind == "exact"
            else "at least the advertised number of copies appears")
    return Claim(f"{prefix}.copies", what, kind, expected, report.copies)


def _checked_build(prefix: str, s: PointSet, expected_size: int,
                   line_bound: int, line_exact: bool, pattern: Pattern,
                   expected_copies: int, copies_kind: str, *,
                   full_witnesses: bool = False,
                   workers: int = 1) -> tuple[VerdictLedger, CountReport | None]:
    """Run the standard check sequence, cheapest first, stopping at the
    first failure so rejected samples stay inexpensive."""
    led = VerdictLedger()
    c = led.add(_size_claim(prefix, s, expected_size))
    if not c.passed:
        return led, None
    c = led.add(_collinear_claim(prefix, s, line_bound, line_exact))
    if not c.passed:
        return led, None
    rep = count_similar(pattern, s, full_witnesses=full_witnesses,
                        workers=workers)
    led.add(_copies_claim(prefix, rep, expected_copies, copies_kind))
    return led, rep


# ---------------------------------------------------------------------------
# pattern factories
# ---------------------------------------------------------------------------

def equilateral_triangle() -> Pattern:
    """The third roots of unity, conductor 12."""
    w = zeta(12, 4)
    return Pattern.from_points([one(12), w, w * w])


def square_pattern() -> Pattern:
    """The fourth roots of unity."""
    return Pattern.from_points([zeta(4, k) for k in range(4)])


def regular_polygon(k: int) -> Pattern:
    """Vertices of the regular k-gon, conductor lcm(4, k)."""
    if k < 3:
        raise ValueError("a regular polygon needs k >= 3")
    order = math.lcm(4, k)
    if order > MAX_CONDUCTOR:
        raise ValueError(f"conductor {order} exceeds the cap {MAX_CONDUCTOR}")
    return Pattern.from_points([zeta(order, j * order // k)
                                for j in range(k)])


def _squared_distance(a: CycloNum, b: CycloNum) -> CycloNum:
    d = a - b
    return d * d.conj()


def scalene_triangle(z: CycloNum | None = None, seed: int | None = 0,
                     rng: random.Random | None = None,
                     height: int = DEFAULT_HEIGHT,
                     budget: int = DEFAULT_BUDGET) -> Pattern:
    """The triangle {0, 1, z} for a non-real z with three distinct side
    lengths; z is sampled when not supplied."""
    rng = _rng_for(seed, rng)
    for _ in range(budget):
        cand = z if z is not None else _sample_gaussian(rng, 4, height)
        o, i = zero(cand.order), one(cand.order)
        sides = {_squared_distance(o, i).coeffs,
                 _squared_distance(o, cand).coeffs,
                 _squared_distance(i, cand).coeffs}
        if not cand.is_real() and len(sides) == 3:
            return Pattern.from_points([o, i, cand])
        if z is not None:
            raise PreconditionError(f"{z} does not give a scalene triangle")
    raise ResampleBudgetError("could not sample a scalene triangle")


_EXCLUDED_A = frozenset(Fraction(k, 12) for k in range(1, 6))
_EXCLUDED_B = frozenset((Fraction(1, 6), Fraction(1, 4), Fraction(1, 3)))


def isosceles_triangle(alpha: Fraction) -> Pattern:
    """The isosceles triangle {0, 1, -u} with base angles alpha*pi and apex
    angle (1 - 2*alpha)*pi, where u = exp(2*pi*i*alpha)."""
    alpha = Fraction(alpha)
    if not 0 < alpha < Fraction(1, 2):
        raise ValueError("alpha must lie strictly between 0 and 1/2 "
                         "(as a fraction of pi)")
    order = math.lcm(4, alpha.denominator)
    if order > MAX_CONDUCTOR:
        raise ValueError(f"conductor {order} exceeds the cap {MAX_CONDUCTOR}")
    u = zeta(order, alpha.numerator * (order // alpha.denominator))
    return Pattern.from_points([zero(order), one(order), -u])


# ---------------------------------------------------------------------------
# initial-set recipes
# ---------------------------------------------------------------------------

def theorem3_generic(pattern: Pattern | None = None, k: int = 3,
                     z0: CycloNum | None = None, m: int | None = None,
                     seed: int | None = 0, rng: random.Random | None = None,
                     height: int = DEFAULT_HEIGHT,
                     budget: int = DEFAULT_BUDGET,
                     workers: int = 1) -> BuildReport:
    """The generic amalgam: k similarities f_p, p in P, each sending the
    first anchor to a common generic point z0 and the second anchor to p.

    A = union of f_p(P) has k^2 - k + 1 points (the copies share only z0)
    and carries at least 2k - 1 copies of P: the k sets f_p(P) and, for
    each non-anchor q in P, the set {f_p(q) : p in P}, itself a similar
    copy of P.
    """
    rng = _rng_for(seed, rng)
    if pattern is None:
        pattern = _sample_generic_pattern(rng, k, height, budget)
    k = pattern.size
    base = pattern.base
    if m is None:
        m = max(3, max_collinear(base) + 1)
    if max_collinear(base) >= m:
        raise PreconditionError(
            f"pattern already contains {m} collinear points")
    i1, i2 = pattern.anchors
    p1, p2 = base[i1], base[i2]
    diff = p1 - p2
    expected_size = k * k - k + 1
    if expected_size > size_cap():
        raise SizeCapError(
            f"amalgam would have {expected_size} points, over the cap "
            f"{size_cap()}")
    expected_copies = 2 * k - 1
    if z0 is not None and z0.lift(base.order) in base:
        raise PreconditionError("z0 must avoid the pattern points")
    attempts = 0
    while attempts < budget:
        attempts += 1
        cand = z0 if z0 is not None else \
            _sample_gaussian(rng, base.order, height)
        cand = cand.lift(base.order)
        if cand in base:
            continue
        pts = set()
        for p in base:
            a = (cand - p) / diff
            b = (p * p1 - cand * p2) / diff
            for q in base:
                pts.add(a * q + b)
        s = PointSet(pts)
        led, rep = _checked_build(
            "build.theorem3_generic", s, expected_size, m - 1, False,
            pattern, expected_copies, "lower", workers=workers)
        if led.ok and rep is not None:
            return BuildReport(
                recipe="theorem3_generic",
                params={"k": k, "m": m, "z0": cand},
                seed=seed if rng is not None else None,
                resamples=attempts - 1, output=s, pattern=pattern,
                expected_size=expected_size, expected_copies=expected_copies,
                copies_kind="lower", checks=led, count=rep,
                extras={"z0": cand})
        if z0 is not None:
            raise BuildCheckError(
                f"theorem3_generic failed checks at fixed z0: "
                f"{[c.claim_id for c in led.failed()]}")
    raise ResampleBudgetError(
        f"theorem3_generic exhausted {budget} samples")


def _sample_generic_pattern(rng: random.Random, k: int, height: int,
                            budget: int) -> Pattern:
    if k < 3:
        raise ValueError("the amalgam needs a pattern with k >= 3")
    for _ in range(budget):
        pts = [zero(4), one(4)]
        pts.extend(_sample_gaussian(rng, 4, height) for _ in range(k - 2))
        if len({p.coeffs for p in pts}) < k:
            continue
        s = PointSet(pts)
        if max_collinear(s) == 2:
            return Pattern(s)
    raise ResampleBudgetError("could not sample a generic pattern")


def scalene5(z: CycloNum | None = None, seed: int | None = 0,
             rng: random.Random | None = None, height: int = DEFAULT_HEIGHT,
             budget: int = DEFAULT_BUDGET, workers: int = 1) -> BuildReport:
    """Five points with four copies of the scalene triangle T = {0, 1, z}:

        A = {0, 1, z, w, w*z},  w = z - 1 + 1/z.

    The four copies are (0,1,z), (z,w,1), (1,z,w*z) and (0,w,w*z); for
    generic z there is no fifth, so the count is exact.
    """
    rng = _rng_for(seed, rng)
    attempts = 0
    while attempts < budget:
        attempts += 1
        try:
            pattern = scalene_triangle(z, rng=rng, height=height, budget=1)
        except ResampleBudgetError:
            continue
        zz = pattern.base[_nonanchor_z_index(pattern)]
        w = zz - 1 + 1 / zz
        pts = {zero(4), one(4), zz, w, w * zz}
        if len(pts) < 5:
            if z is not None:
                raise BuildCheckError("scalene5 collapsed at the fixed z")
            continue
        s = PointSet(pts)
        led, rep = _checked_build("build.scalene5", s, 5, 2, True,
                                  pattern, 4, "exact", workers=workers)
        if led.ok and rep is not None:
            return BuildReport(
                recipe="scalene5", params={"z": zz},
                seed=seed if rng is not None else None,
                resamples=attempts - 1, output=s, pattern=pattern,
                expected_size=5, expected_copies=4, copies_kind="exact",
                checks=led, count=rep, extras={"z": zz, "w": w})
        if z is not None:
            raise BuildCheckError(
                f"scalene5 failed checks at fixed z: "
                f"{[c.claim_id for c in led.failed()]}")
    raise ResampleBudgetError(f"scalene5 exhausted {budget} samples")


def _nonanchor_z_index(pattern: Pattern) -> int:
    for i, p in enumerate(pattern.base):
        if p != 0 and p != 1:
            return i
    raise PreconditionError("triangle {0, 1, z} expected")


def scalene14(z: CycloNum | None = None, seed: int | None = 0,
              rng: random.Random | None = None, height: int = DEFAULT_HEIGHT,
              budget: int = DEFAULT_BUDGET, workers: int = 1) -> BuildReport:
    """Fourteen points with 26 copies of the scalene triangle T = {0, 1, z}.

    With w = z - 1 + 1/z and A1 = {0, 1, z, w, w*z}, the set

        A  = A1  union  z*A1  union  {w*z^2/(z-1)},
        A2 = A   union  (-A + w*z)

    has 14 points after the intended coincidences and at least 26 copies
    of T: six disjoint 5-point configurations plus two extra triangles.
    """
    rng = _rng_for(seed, rng)
    attempts = 0
    while attempts < budget:
        attempts += 1
        try:
            pattern = scalene_triangle(z, rng=rng, height=height, budget=1)
        except ResampleBudgetError:
            continue
        zz = pattern.base[_nonanchor_z_index(pattern)]
        if zz == 1:
            continue
        w = zz - 1 + 1 / zz
        a1 = [zero(4), one(4), zz, w, w * zz]
        a = set(a1)
        a.update(p * zz for p in a1)
        a.add(w * zz * zz / (zz - 1))
        a2 = set(a)
        a2.update(-p + w * zz for p in a)
        if len(a2) != 14:
            if z is not None:
                raise BuildCheckError("scalene14 collapsed at the fixed z")
            continue
        s = PointSet(a2)
        led, rep = _checked_build("build.scalene14", s, 14, 2, True,
                                  pattern, 26, "lower", workers=workers)
        if led.ok and rep is not None:
            return BuildReport(
                recipe="scalene14", params={"z": zz},
                seed=seed if rng is not None else None,
                resamples=attempts - 1, output=s, pattern=pattern,
                expected_size=14, expected_copies=26, copies_kind="lower",
                checks=led, count=rep, extras={"z": zz, "w": w})
        if z is not None:
            raise BuildCheckError(
                f"scalene14 failed checks at fixed z: "
                f"{[c.claim_id for c in led.failed()]}")
    raise ResampleBudgetError(f"scalene14 exhausted {budget} samples")


def isosceles8(variant: str = "a", alpha: Fraction = Fraction(1, 5),
               workers: int = 1) -> BuildReport:
    """Eight points with exactly nine copies of the isosceles triangle
    T(alpha) = {0, 1, -u}, u = exp(2*pi*i*alpha), alpha a fraction of pi.

    variant a:  A = B union conj(B),  B = {0, 1, u, 1+u, (2u+1)/(u+1)};
                excluded apex parameters alpha = k/12.
    variant b:  A = B union conj(B),  B = {0, 1, u, u/(u+1), 1-1/(u+1)^2};
                excluded apex parameters alpha = 1/6, 1/4, 1/3.

    At the shared exclusions 1/6, 1/4, 1/3 the triangle embeds in a
    regular polygon and subset_regular_bound covers it; at the other
    exclusions the sibling variant applies.
    """
    alpha = Fraction(alpha)
    if variant not in ("a", "b"):
        raise ValueError("variant must be 'a' or 'b'")
    excluded = _EXCLUDED_A if variant == "a" else _EXCLUDED_B
    if alpha in excluded:
        other = "b" if variant == "a" else "a"
        other_ok = alpha not in (_EXCLUDED_B if variant == "a"
                                 else _EXCLUDED_A)
        hint = (f"use variant {other!r}" if other_ok else
                "count through the containing regular polygon with "
                "subset_regular_bound")
        raise AngleExcludedError(
            f"alpha = {alpha} (times pi) degenerates variant {variant!r}; "
            f"{hint}")
    pattern = isosceles_triangle(alpha)
    order = pattern.base.order
    u = -[p for p in pattern.base if p != 0 and p != 1][0]
    if variant == "a":
        b = [zero(order), one(order), u, 1 + u, (2 * u + 1) / (u + 1)]
    else:
        b = [zero(order), one(order), u, u / (u + 1),
             1 - 1 / ((u + 1) * (u + 1))]
    pts = set(b)
    pts.update(p.conj() for p in b)
    if len(pts) != 8:
        raise BuildCheckError(
            f"isosceles8 variant {variant!r} at alpha={alpha} collapsed to "
            f"{len(pts)} points")
    s = PointSet(pts)
    led, rep = _checked_build("build.isosceles8", s, 8, 2, True, pattern, 9,
                              "exact", full_witnesses=True, workers=workers)
    if not led.ok or rep is None:
        raise BuildCheckError(
            f"isosceles8 failed checks: {[c.claim_id for c in led.failed()]}")
    return BuildReport(
        recipe="isosceles8", params={"variant": variant, "alpha": alpha},
        seed=None, resamples=0, output=s, pattern=pattern, expected_size=8,
        expected_copies=9, copies_kind="exact", checks=led, count=rep,
        extras={"u": u})


def equilateral15(z: CycloNum | None = None, seed: int | None = 0,
                  rng: random.Random | None = None,
                  height: int = DEFAULT_HEIGHT, budget: int = DEFAULT_BUDGET,
                  workers: int = 1) -> BuildReport:
    """Fifteen points with exactly 29 equilateral triangles:

        A = B union w*B union w^2*B,  B = {1, -z} union (-1 + z*P),

    where P = {1, w, w^2} are the third roots of unity.  The rotational
    union contains the Minkowski sum -P + z*P (nine triangles), the two
    central triangles, and six more through each of 1, w, w^2.
    """
    rng = _rng_for(seed, rng)
    order = 12
    w = zeta(order, 4)
    pattern = equilateral_triangle()
    p = [one(order), w, w * w]
    attempts = 0
    while attempts < budget:
        attempts += 1
        cand = (z if z is not None else
                _sample_gaussian(rng, order, height)).lift(order)
        b = [one(order), -cand] + [-1 + cand * q for q in p]
        pts = set()
        for rot in (one(order), w, w * w):
            pts.update(rot * x for x in b)
        if len(pts) != 15:
            if z is not None:
                raise BuildCheckError(
                    "equilateral15 collapsed at the fixed z")
            continue
        s = PointSet(pts)
        led, rep = _checked_build("build.equilateral15", s, 15, 2, True,
                                  pattern, 29, "exact", workers=workers)
        if led.ok and rep is not None:
            return BuildReport(
                recipe="equilateral15", params={"z": cand},
                seed=seed if rng is not None else None,
                resamples=attempts - 1, output=s, pattern=pattern,
                expected_size=15, expected_copies=29, copies_kind="exact",
                checks=led, count=rep, extras={"z": cand})
        if z is not None:
            raise BuildCheckError(
                f"equilateral15 failed checks at fixed z: "
                f"{[c.claim_id for c in led.failed()]}")
    raise ResampleBudgetError(f"equilateral15 exhausted {budget} samples")


def even_kgon(k: int = 4, z: CycloNum | None = None, seed: int | None = 0,
              rng: random.Random | None = None, height: int = DEFAULT_HEIGHT,
              budget: int = DEFAULT_BUDGET, workers: int = 1) -> BuildReport:
    """(k/2)(k^2 - 2k + 4) points with at least (5k^2 - 6k + 4)/2 regular
    k-gons, for even k >= 4.

    Apply the generic amalgam to P = 1 + w + z*{w^j} (w = exp(2*pi*i/k))
    with the common image point z0 = 2; rotating the resulting set by all
    k-th roots of unity merges many of the amalgam copies, which brings
    the k^3-ish raw union down to (k/2)(k^2 - 2k + 4) distinct points.
    """
    if k < 4 or k % 2:
        raise ValueError("even_kgon needs an even k >= 4")
    order = math.lcm(4, k)
    if order > MAX_CONDUCTOR:
        raise ValueError(f"conductor {order} exceeds the cap {MAX_CONDUCTOR}")
    if k > 10:
        warnings.warn(
            f"even_kgon with k={k}: the construction still verifies, but "
            f"its similarity index no longer beats the k-gon baseline "
            f"log(2k)/log(k)", stacklevel=2)
    rng = _rng_for(seed, rng)
    w = zeta(order, order // k)
    pattern = regular_polygon(k)
    expected_size = (k // 2) * (k * k - 2 * k + 4)
    if expected_size > size_cap():
        raise SizeCapError(
            f"construction would have {expected_size} points, over the cap "
            f"{size_cap()}")
    expected_copies = (5 * k * k - 6 * k + 4) // 2
    wpow = [zeta(order, j * order // k) for j in range(k)]
    attempts = 0
    while attempts < budget:
        attempts += 1
        cand = (z if z is not None else
                _sample_gaussian(rng, order, height)).lift(order)
        p = [1 + w + cand * wj for wj in wpow]
        a1 = {rational(order, 2)}
        for j in range(1, k):
            coef = (1 - wpow[j]) / (1 - w)
            shift = 2 * (wpow[j] - w) / (1 - w)
            a1.update(coef * q + shift for q in p)
        pts = set()
        for rot in wpow:
            pts.update(rot * x for x in a1)
        if len(pts) != expected_size:
            if z is not None:
                raise BuildCheckError("even_kgon collapsed at the fixed z")
            continue
        s = PointSet(pts)
        led, rep = _checked_build("build.even_kgon", s, expected_size, 2,
                                  True, pattern, expected_copies, "lower",
                                  workers=workers)
        if led.ok and rep is not None:
            return BuildReport(
                recipe="even_kgon", params={"k": k, "z": cand},
                seed=seed if rng is not None else None,
                resamples=attempts - 1, output=s, pattern=pattern,
                expected_size=expected_size, expected_copies=expected_copies,
                copies_kind="lower", checks=led, count=rep,
                extras={"z": cand})
        if z is not None:
            raise BuildCheckError(
                f"even_kgon failed checks at fixed z: "
                f"{[c.claim_id for c in led.failed()]}")
    raise ResampleBudgetError(f"even_kgon exhausted {budget} samples")


def pentagon120(z: CycloNum | None = None, seed: int | None = 0,
                rng: random.Random | None = None,
                height: int = DEFAULT_HEIGHT, budget: int = DEFAULT_BUDGET,
                workers: int = 1) -> BuildReport:
    """120 points in which every point lies on exactly 11 regular
    pentagons, 264 pentagons in total.

    With w = exp(2*pi*i/5), sqrt5 = 1 + 2(w + w^4) and P = z*{w^j}:

        A1 = P + (sqrt5+3)/2,   A2 = ((sqrt5+1)/2) * (-P + 1),
        A3 = (w^2-1) * {z, w+1},
        B  = A1 u -A1 u A2 u -A2 u A3 u -A3,   A = union of w^k * B.

    The ten rotated copies of A1 and A2 form four 25-point pentagon
    Minkowski sums with 15 pentagons each; the rotations of A3 and -A3
    form two regular decagons.
    """
    rng = _rng_for(seed, rng)
    order = 20
    w = zeta(order, 4)
    pattern = regular_polygon(5)
    sqrt5 = 1 + 2 * (w + w ** 4)
    golden = (sqrt5 + 1) / 2
    wpow = [w ** j for j in range(5)]
    attempts = 0
    while attempts < budget:
        attempts += 1
        cand = (z if z is not None else
                _sample_gaussian(rng, order, height)).lift(order)
        p = [cand * wj for wj in wpow]
        a1 = [q + (sqrt5 + 3) / 2 for q in p]
        a2 = [golden * (1 - q) for q in p]
        a3 = [(w * w - 1) * cand, (w * w - 1) * (w + 1)]
        b = []
        for group in (a1, a2, a3):
            b.extend(group)
            b.extend(-q for q in group)
        pts = set()
        for rot in wpow:
            pts.update(rot * x for x in b)
        if len(pts) != 120:
            if z is not None:
                raise BuildCheckError("pentagon120 collapsed at the fixed z")
            continue
        s = PointSet(pts)
        led, rep = _checked_build("build.pentagon120", s, 120, 2, True,
                                  pattern, 264, "lower",
                                  full_witnesses=True, workers=workers)
        if led.ok and rep is not None:
            incidence = rep.point_incidence()
            uniform = incidence[0] if len(set(incidence)) == 1 else -1
            c = led.add(Claim(
                "build.pentagon120.incidence",
                "every point lies on exactly 11 regular pentagons",
                "exact", 11, uniform))
            if not c.passed:
                if z is not None:
                    raise BuildCheckError(
                        "pentagon120 incidence failed at the fixed z")
                continue
            return BuildReport(
                recipe="pentagon120", params={"z": cand},
                seed=seed if rng is not None else None,
                resamples=attempts - 1, output=s, pattern=pattern,
                expected_size=120, expected_copies=264, copies_kind="lower",
                checks=led, count=rep, extras={"z": cand})
        if z is not None:
            raise BuildCheckError(
                f"pentagon120 failed checks at fixed z: "
                f"{[c.claim_id for c in led.failed()]}")
    raise ResampleBudgetError(f"pentagon120 exhausted {budget} samples")


_HEX_ODD_TARGETS = {5: (14, 34), 7: (30, 166), 9: (52, 516)}


def hex_lattice_cluster(m: int = 4, workers: int = 1) -> BuildReport:
    """Triangular-lattice cluster with at most m - 1 collinear points.

    For even m the cluster is the hexagonal lattice ball of side
    s = m/2 - 1 (points a + b*zeta6 with |a|, |b|, |a+b| <= s), which has
    (3m^2 - 6m + 4)/4 points, largest collinear subset exactly m - 1, and
    exactly (7m^4 - 28m^3 + 36m^2 - 16m)/64 equilateral triangles.

    For odd m no closed form is claimed.  The recipe ships the side
    (m-1)/2 ball with three alternating corners removed (so no full
    diagonal of m points survives) and records the published figure
    targets for m in {5, 7, 9} as informational claims.
    """
    if m < 4:
        raise ValueError("hex_lattice_cluster needs m >= 4")
    order = 12
    z6 = zeta(order, 2)
    pattern = equilateral_triangle()
    s_side = (m - 2) // 2 if m % 2 == 0 else (m - 1) // 2
    pts = set()
    for a in range(-s_side, s_side + 1):
        for b in range(-s_side, s_side + 1):
            if abs(a + b) <= s_side:
                pts.add(rational(order, a) + z6 * b)
    if m % 2:
        corner = rational(order, s_side)
        for rot in (zeta(order, 0), zeta(order, 4), zeta(order, 8)):
            pts.discard(corner * rot)
    s = PointSet(pts)
    prefix = "build.hex_lattice_cluster"
    led = VerdictLedger()
    if m % 2 == 0:
        expected_size = (3 * m * m - 6 * m + 4) // 4
        expected_copies = (7 * m ** 4 - 28 * m ** 3 + 36 * m * m
                           - 16 * m) // 64
        led.add(_size_claim(prefix, s, expected_size))
        led.add(_collinear_claim(prefix, s, m - 1, True))
        rep = count_similar(pattern, s, workers=workers)
        led.add(_copies_claim(prefix, rep, expected_copies, "exact"))
        kind = "exact"
    else:
        expected_size = len(s)
        led.add(_collinear_claim(prefix, s, m - 1, False))
        rep = count_similar(pattern, s, workers=workers)
        expected_copies = rep.copies
        kind = "lower"
        target = _HEX_ODD_TARGETS.get(m)
        if target is not None:
            tsize, tcopies = target
            led.add(Claim(f"{prefix}.target_size",
                          "published cluster size for this odd m",
                          "target", tsize, len(s)))
            led.add(Claim(f"{prefix}.target_copies",
                          "published triangle count for this odd m",
                          "target", tcopies, rep.copies))
    if not led.ok:
        raise BuildCheckError(
            f"hex_lattice_cluster failed checks: "
            f"{[c.claim_id for c in led.failed()]}")
    return BuildReport(
        recipe="hex_lattice_cluster", params={"m": m}, seed=None,
        resamples=0, output=s, pattern=pattern,
        expected_size=expected_size, expected_copies=expected_copies,
        copies_kind=kind, checks=led, count=rep,
        extras={"side": s_side, "odd": bool(m % 2)})


# ---------------------------------------------------------------------------
# Minkowski machinery
# ---------------------------------------------------------------------------

def minkowski_sum_generic(a: PointSet, b: PointSet, m: int,
                          seed: int | None = 0,
                          rng: random.Random | None = None,
                          height: int = DEFAULT_HEIGHT,
                          budget: int = DEFAULT_BUDGET
                          ) -> tuple[GenericParam, PointSet]:
    """A + v*B for a sampled generic v: exactly |A|*|B| points and fewer
    than m on every line (both operands must already satisfy the line
    condition)."""
    if m < 3:
        raise ValueError("the collinearity bound m must be at least 3")
    if max_collinear(a) >= m or max_collinear(b) >= m:
        raise PreconditionError(
            f"an operand already has {m} collinear points")
    target = len(a) * len(b)
    if target > size_cap():
        raise SizeCapError(
            f"sum would have {target} points, over the cap {size_cap()}")
    order = math.lcm(4, common_order(a.order, b.order))
    if order > MAX_CONDUCTOR:
        raise ValueError(f"conductor {order} exceeds the cap {MAX_CONDUCTOR}")
    al = a.lift(order)
    bl = b.lift(order)
    rng = _rng_for(seed, rng)
    for attempt in range(1, budget + 1):
        v = _sample_gaussian(rng, order, height)
        pts = {x + v * y for x in al for y in bl}
        if len(pts) != target:
            continue
        s = PointSet(pts)
        if max_collinear(s) < m:
            return GenericParam(v, height, attempt), s
    raise ResampleBudgetError(
        f"minkowski_sum_generic exhausted {budget} samples")


def minkowski_iterate(pattern: Pattern, a: PointSet, j: int, m: int,
                      seed: int | None = 0,
                      rng: random.Random | None = None,
                      height: int = DEFAULT_HEIGHT,
                      budget: int = DEFAULT_BUDGET,
                      workers: int = 1) -> BuildReport:
    """j-fold Minkowski iteration A + v2*A + ... keeping the line bound.

    With n = |A|, I the pattern's symmetry order and S the pattern count
    of A, the iterate has n^j points and at least
    ((I*S + n)^j - n^j) / I pattern copies.
    """
    if j < 1:
        raise ValueError("iteration depth j must be at least 1")
    n = len(a)
    total = n ** j
    if total > size_cap():
        raise SizeCapError(
            f"iterate would have {total} points, over the cap {size_cap()}")
    if max_collinear(a) >= m:
        raise PreconditionError(f"base set already has {m} collinear points")
    rng = _rng_for(seed, rng)
    base_rep = count_similar(pattern, a, workers=workers)
    sym = base_rep.sym_order
    steps: list[GenericParam] = []
    acc = a
    for _ in range(j - 1):
        param, acc = minkowski_sum_generic(acc, a, m, rng=rng, height=height,
                                           budget=budget)
        steps.append(param)
    expected_copies = ((sym * base_rep.copies + n) ** j - total) // sym
    prefix = "build.minkowski_iterate"
    led, rep = _checked_build(prefix, acc, total, m - 1, False, pattern,
                              expected_copies, "lower", workers=workers)
    if not led.ok or rep is None:
        raise BuildCheckError(
            f"minkowski_iterate failed checks: "
            f"{[c.claim_id for c in led.failed()]}")
    growth_c = 1.0 / (2 * sym * n ** base_rep.index)
    return BuildReport(
        recipe="minkowski_iterate",
        params={"j": j, "m": m, "base_size": n},
        seed=seed if rng is not None else None, resamples=0, output=acc,
        pattern=pattern, expected_size=total,
        expected_copies=expected_copies, copies_kind="lower", checks=led,
        count=rep,
        extras={"base_copies": base_rep.copies, "base_index": base_rep.index,
                "sym_order": sym, "iterations": j, "collinear_bound": m,
                "growth_constant": growth_c,
                "step_params": [p.value.to_text() for p in steps]})


# ---------------------------------------------------------------------------
# parallelogram-free machinery
# ---------------------------------------------------------------------------

def _require_pfree(s: PointSet, label: str) -> None:
    if len(s) >= 3 and max_collinear(s) > 2:
        raise PreconditionError(f"{label} has three collinear points")
    witness = find_parallelogram(s)
    if witness is not None:
        raise PreconditionError(
            f"{label} contains the parallelogram "
            f"{tuple(str(p) for p in witness)}")


def pfree_Q(pattern: Pattern, a: PointSet, u: CycloNum | None = None,
            v: CycloNum | None = None, seed: int | None = 0,
            rng: random.Random | None = None, height: int = DEFAULT_HEIGHT,
            budget: int = DEFAULT_BUDGET, strict: bool = False,
            workers: int = 1) -> BuildReport:
    """One parallelogram-free recursion step

        Q(P, A, u, v) = union over p in P of  u*p + (v*p - p + 1) * A,

    for generic u, v: |P|*|A| points, no 3 collinear, no parallelogram,
    and at least |P|*S_P(A) + |A| copies of P (each affine image of A
    keeps its S_P(A) copies; each a in A contributes the copy
    {u*p + (v*p - p + 1)*a : p in P} of P).

    strict mode additionally rejects candidates with two disjoint
    parallel segments.
    """
    p_set = pattern.base
    _require_pfree(p_set, "the pattern base")
    _require_pfree(a, "the base set")
    target = len(p_set) * len(a)
    if target > size_cap():
        raise SizeCapError(
            f"recursion output would have {target} points, over the cap "
            f"{size_cap()}")
    order = math.lcm(4, common_order(p_set.order, a.order))
    if order > MAX_CONDUCTOR:
        raise ValueError(f"conductor {order} exceeds the cap {MAX_CONDUCTOR}")
    pl = p_set.lift(order)
    al = a.lift(order)
    base_rep = count_similar(pattern, a, workers=workers)
    expected_copies = len(pl) * base_rep.copies + len(al)
    rng = _rng_for(seed, rng)
    fixed = u is not None and v is not None
    attempts = 0
    prefix = "build.pfree_q"
    while attempts < budget:
        attempts += 1
        uu = (u if u is not None else
              _sample_gaussian(rng, order, height)).lift(order)
        vv = (v if v is not None else
              _sample_gaussian(rng, order, height)).lift(order)
        pts = set()
        for pp in pl:
            scale = vv * pp - pp + 1
            shift = uu * pp
            pts.update(scale * x + shift for x in al)
        if len(pts) != target:
            if fixed:
                raise BuildCheckError("pfree_Q collapsed at the fixed u, v")
            continue
        s = PointSet(pts)
        led, rep = _checked_build(prefix, s, target, 2, True, pattern,
                                  expected_copies, "lower", workers=workers)
        pfree_ok = led.ok and find_parallelogram(s) is None
        led.add(Claim(f"{prefix}.parallelogram_free",
                      "no four points form a parallelogram", "exact", True,
                      find_parallelogram(s) is None))
        if strict and pfree_ok:
            c = led.add(Claim(f"{prefix}.no_parallel_segments",
                              "no two disjoint segments are parallel",
                              "exact", False, has_parallel_segments(s)))
            pfree_ok = c.passed
        if pfree_ok and rep is not None:
            return BuildReport(
                recipe="pfree_q", params={"u": uu, "v": vv},
                seed=seed if rng is not None else None,
                resamples=attempts - 1, output=s, pattern=pattern,
                expected_size=target, expected_copies=expected_copies,
                copies_kind="lower", checks=led, count=rep,
                extras={"u": uu, "v": vv, "base_copies": base_rep.copies})
        if fixed:
            raise BuildCheckError(
                f"pfree_Q failed checks at fixed u, v: "
                f"{[c.claim_id for c in led.failed()]}")
    raise ResampleBudgetError(f"pfree_Q exhausted {budget} samples")


def pfree_iterate(pattern: Pattern, m: int, seed: int | None = 0,
                  rng: random.Random | None = None,
                  height: int = DEFAULT_HEIGHT, budget: int = DEFAULT_BUDGET,
                  strict: bool = False, workers: int = 1) -> BuildReport:
    """m-fold parallelogram-free recursion starting from A_1 = P.

    The m-th set has |P|^m points, stays parallelogram-free with no 3
    collinear, and carries at least m * |P|^(m-1) copies of P.  Counts of
    parallelogram-free sets are also bounded above by n^(3/2) + n, which
    is recorded alongside the lower bound.
    """
    if m < 1:
        raise ValueError("iteration depth m must be at least 1")
    k = pattern.size
    total = k ** m
    if total > size_cap():
        raise SizeCapError(
            f"iterate would have {total} points, over the cap {size_cap()}")
    _require_pfree(pattern.base, "the pattern base")
    rng = _rng_for(seed, rng)
    acc = pattern.base
    params: list[dict] = []
    last: BuildReport | None = None
    for _ in range(m - 1):
        last = pfree_Q(pattern, acc, rng=rng, height=height, budget=budget,
                       strict=strict, workers=workers)
        acc = last.output
        params.append({"u": last.params["u"].to_text(),
                       "v": last.params["v"].to_text()})
    rep = last.count if last is not None else \
        count_similar(pattern, acc, workers=workers)
    prefix = "build.pfree_iterate"
    led = VerdictLedger()
    led.add(_size_claim(prefix, acc, total))
    led.add(_collinear_claim(prefix, acc, 2, True))
    led.add(Claim(f"{prefix}.parallelogram_free",
                  "no four points form a parallelogram", "exact", True,
                  find_parallelogram(acc) is None))
    expected_copies = m * k ** (m - 1)
    led.add(_copies_claim(prefix, rep, expected_copies, "lower"))
    led.add(Claim(f"{prefix}.upper",
                  "the count respects the n^(3/2) + n ceiling for "
                  "parallelogram-free sets", "upper",
                  _ceil_three_halves(total) + total, rep.copies))
    if not led.ok:
        raise BuildCheckError(
            f"pfree_iterate failed checks: "
            f"{[c.claim_id for c in led.failed()]}")
    return BuildReport(
        recipe="pfree_iterate", params={"m": m},
        seed=seed if rng is not None else None, resamples=0, output=acc,
        pattern=pattern, expected_size=total,
        expected_copies=expected_copies, copies_kind="lower", checks=led,
        count=rep, extras={"step_params": params})


def _ceil_three_halves(n: int) -> int:
    r = math.isqrt(n ** 3)
    return r if r * r == n ** 3 else r + 1


# ---------------------------------------------------------------------------
# catalog
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CatalogEntry:
    name: str
    kind: str  # "set" or "pattern"
    summary: str
    params: tuple[tuple[str, str, str, str], ...]  # (name, type, default, help)
    builder: Callable[..., BuildReport]


def _pattern_report(name: str, pattern: Pattern, params: dict) -> BuildReport:
    led = VerdictLedger()
    led.add(Claim(f"build.{name}.size", "the pattern has its nominal size",
                  "exact", pattern.size, len(pattern.base)))
    return BuildReport(
        recipe=name, params=params, seed=None, resamples=0,
        output=pattern.base, pattern=pattern, expected_size=pattern.size,
        expected_copies=None, copies_kind="exact", checks=led, count=None,
        extras={"sym_order": pattern.sym_order})


def _build_triangle(**kw) -> BuildReport:
    return _pattern_report("triangle", equilateral_triangle(), {})


def _build_square(**kw) -> BuildReport:
    return _pattern_report("square", square_pattern(), {})


def _build_regular_kgon(k: int = 5, **kw) -> BuildReport:
    return _pattern_report("regular_kgon", regular_polygon(k), {"k": k})


def _build_scalene_triangle(seed: int = 0, height: int = DEFAULT_HEIGHT,
                            **kw) -> BuildReport:
    pat = scalene_triangle(seed=seed, height=height)
    z = pat.base[_nonanchor_z_index(pat)]
    return _pattern_report("scalene_triangle", pat, {"z": z})


def _build_isosceles_triangle(alpha: Fraction = Fraction(1, 5),
                              **kw) -> BuildReport:
    return _pattern_report("isosceles_triangle", isosceles_triangle(alpha),
                           {"alpha": Fraction(alpha)})


CATALOG: dict[str, CatalogEntry] = {}


def _register(name: str, kind: str, summary: str, params, builder) -> None:
    CATALOG[name] = CatalogEntry(name, kind, summary, tuple(params), builder)


_register("triangle", "pattern", "equilateral triangle pattern", [],
          _build_triangle)
_register("square", "pattern", "square pattern", [], _build_square)
_register("regular_kgon", "pattern", "regular k-gon pattern",
          [("k", "int", "5", "number of vertices")], _build_regular_kgon)
_register("scalene_triangle", "pattern",
          "scalene triangle {0, 1, z} with sampled z",
          [("seed", "int", "0", "sampling seed"),
           ("height", "int", str(DEFAULT_HEIGHT), "parameter height")],
          _build_scalene_triangle)
_register("isosceles_triangle", "pattern",
          "isosceles triangle {0, 1, -u} with base angle alpha*pi",
          [("alpha", "fraction", "1/5", "base angle as a fraction of pi")],
          _build_isosceles_triangle)

_register("theorem3_generic", "set",
          "generic amalgam: k^2-k+1 points, >= 2k-1 pattern copies",
          [("k", "int", "3", "pattern size"),
           ("seed", "int", "0", "sampling seed"),
           ("height", "int", str(DEFAULT_HEIGHT), "parameter height")],
          theorem3_generic)
_register("scalene5", "set",
          "5 points with exactly 4 copies of a scalene triangle",
          [("seed", "int", "0", "sampling seed"),
           ("height", "int", str(DEFAULT_HEIGHT), "parameter height")],
          scalene5)
_register("scalene14", "set",
          "14 points with >= 26 copies of a scalene triangle",
          [("seed", "int", "0", "sampling seed"),
           ("height", "int", str(DEFAULT_HEIGHT), "parameter height")],
          scalene14)
_register("isosceles8", "set",
          "8 points with exactly 9 copies of an isosceles triangle",
          [("variant", "str", "a", "construction variant, a or b"),
           ("alpha", "fraction", "1/5", "base angle as a fraction of pi")],
          isosceles8)
_register("equilateral15", "set",
          "15 points with exactly 29 equilateral triangles",
          [("seed", "int", "0", "sampling seed"),
           ("height", "int", str(DEFAULT_HEIGHT), "parameter height")],
          equilateral15)
_register("even_kgon", "set",
          "(k/2)(k^2-2k+4) points rich in regular k-gons, even k",
          [("k", "int", "4", "even polygon size"),
           ("seed", "int", "0", "sampling seed"),
           ("height", "int", str(DEFAULT_HEIGHT), "parameter height")],
          even_kgon)
_register("pentagon120", "set",
          "120 points with 264 regular pentagons, 11 through each point",
          [("seed", "int", "0", "sampling seed"),
           ("height", "int", str(DEFAULT_HEIGHT), "parameter height")],
          pentagon120)
_register("hex_lattice_cluster", "set",
          "triangular lattice cluster with at most m-1 collinear points",
          [("m", "int", "4", "collinearity parameter")],
          hex_lattice_cluster)


def build_catalog(name: str, **kwargs) -> BuildReport:
    entry = CATALOG.get(name)
    if entry is None:
        raise KeyError(f"unknown recipe {name!r}")
    return entry.builder(**kwargs)

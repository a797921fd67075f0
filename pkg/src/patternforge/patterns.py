"""Counting similar copies of a pattern inside a point set.

A pattern P with anchor points (p1, p2) is matched against a target set
A by enumerating ordered pairs (a1, a2) of distinct target points: the
unique direct similarity f with f(p1) = a1, f(p2) = a2 is

    f(z) = a1 + (a2 - a1) * (z - p1) / (p2 - p1),

and the pair is a match when f maps every pattern point into A.  The
number N of matching ordered pairs is a multiple of the proper symmetry
order I of P (the number of direct self-similarities), and the number of
distinct similar copies is S = N / I.  The whole computation runs on
integer coefficient vectors obtained by clearing denominators, so it is
exact and reasonably fast for sets of a few hundred points.

The similarity index of a nonzero count is

    index = log(I*S + |A|) / log |A|,

which lies in [1, 2]: the trivial count S = 0 gives 1, and the ordered
pair bound I*S <= |A|^2 - |A| caps it strictly below 2.
"""

from __future__ import annotations

import math
import multiprocessing
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .errors import OracleGuardError, PreconditionError
from .exactnum import CycloNum, common_order, field
from .geom import PointSet
from .ledger import Claim

__all__ = [
    "Pattern", "CountReport", "proper_symmetry_order", "count_similar",
    "brute_force_count", "index", "subset_regular_bound",
]

WITNESS_CAP = 64


class Pattern:
    """A finite pattern considered up to direct similarity.

    anchors are positions in the (canonically ordered) base set; the two
    anchor points parameterize every candidate similarity.  Counting
    results do not depend on the anchor choice, which the tests exercise.
    """

    __slots__ = ("base", "anchors", "_sym")

    def __init__(self, base: PointSet, anchors: tuple[int, int] = (0, 1)):
        if len(base) < 3:
            raise PreconditionError("a pattern needs at least 3 points")
        i1, i2 = anchors
        if not (0 <= i1 < len(base) and 0 <= i2 < len(base)) or i1 == i2:
            raise PreconditionError(f"invalid anchor pair {anchors}")
        self.base = base
        self.anchors = (i1, i2)
        self._sym: int | None = None

    @classmethod
    def from_points(cls, points, anchors: tuple[int, int] = (0, 1)) -> "Pattern":
        return cls(PointSet.from_points(points), anchors)

    @property
    def size(self) -> int:
        return len(self.base)

    @property
    def sym_order(self) -> int:
        if self._sym is None:
            self._sym = proper_symmetry_order(self.base)
        return self._sym

    def __repr__(self) -> str:
        return (f"<Pattern k={self.size} conductor={self.base.order} "
                f"anchors={self.anchors}>")


@dataclass(frozen=True)
class CountReport:
    """Result of one similar-copy count."""

    pattern_size: int
    sym_order: int
    target_size: int
    ordered_matches: int
    copies: int
    index: float
    witness_sample: tuple[tuple[int, ...], ...]
    full_witnesses: bool

    def copy_sets(self) -> list[frozenset[int]]:
        """Distinct copies as index sets; needs full witness retention."""
        if not self.full_witnesses:
            raise PreconditionError(
                "copy_sets() requires a count run with full_witnesses=True")
        out = {frozenset(w) for w in self.witness_sample}
        if len(out) != self.copies:
            raise RuntimeError("internal: witness sets disagree with count")
        return sorted(out, key=sorted)

    def point_incidence(self) -> list[int]:
        """How many distinct copies pass through each target point."""
        counts = [0] * self.target_size
        for copy in self.copy_sets():
            for i in copy:
                counts[i] += 1
        return counts

    def to_dict(self) -> dict:
        return {
            "pattern_size": self.pattern_size,
            "sym_order": self.sym_order,
            "target_size": self.target_size,
            "ordered_matches": self.ordered_matches,
            "copies": self.copies,
            "index": self.index,
            "witness_sample": [list(w) for w in self.witness_sample],
            "full_witnesses": self.full_witnesses,
        }


# ---------------------------------------------------------------------------
# the matching engine
# ---------------------------------------------------------------------------

def _integerize(points: Sequence[CycloNum]) -> list[tuple[int, ...]]:
    q = 1
    for p in points:
        for c in p.coeffs:
            q = math.lcm(q, c.denominator)
    return [tuple(int(c * q) for c in p.coeffs) for p in points]


def _probe_tables(base: Sequence[CycloNum], anchors: tuple[int, int],
                  vecs: list[tuple[int, ...]]):
    """Per-probe data: (position, scaled direction vector, scaled target keys,
    key -> index lookup).

    For probe ratio lam_j = u_j / q_j (integer vector over denominator q_j)
    and target integer vectors v, the image of probe j under the pair
    (a1, a2) is in the target iff q_j*v(a1) + redmul(v(a2)-v(a1), u_j)
    equals q_j*v(b) for some target point b.
    """
    k = len(base)
    i1, i2 = anchors
    p1, p2 = base[i1], base[i2]
    diff = p2 - p1
    tables = []
    for t in range(k):
        if t == i1 or t == i2:
            continue
        lam = (base[t] - p1) / diff
        qj = 1
        for c in lam.coeffs:
            qj = math.lcm(qj, c.denominator)
        uj = tuple(int(c * qj) for c in lam.coeffs)
        keys = [tuple(qj * x for x in v) for v in vecs]
        lookup = {key: idx for idx, key in enumerate(keys)}
        tables.append((t, uj, keys, lookup))
    return tables


def _scan_pairs(order: int, vecs: list[tuple[int, ...]], tables, start: int,
                stop: int, collect: int | None,
                anchors: tuple[int, int], pattern_size: int):
    """Scan ordered pairs with first index in [start, stop)."""
    fld = field(order)
    mul = fld.mul
    n = len(vecs)
    count = 0
    witnesses: list[tuple[int, ...]] = []
    want = collect is None or collect > 0
    i1, i2 = anchors
    for ia in range(start, stop):
        va = vecs[ia]
        arows = [keys[ia] for (_, _, keys, _) in tables]
        for ib in range(n):
            if ib == ia:
                continue
            d = tuple(x - y for x, y in zip(vecs[ib], va))
            hits = None
            ok = True
            for (_, uj, _, lookup), arow in zip(tables, arows):
                w = mul(d, uj)
                key = tuple(x + y for x, y in zip(arow, w))
                hit = lookup.get(key)
                if hit is None:
                    ok = False
                    break
                if want:
                    if hits is None:
                        hits = []
                    hits.append(hit)
            if not ok:
                continue
            count += 1
            if want and (collect is None or len(witnesses) < collect):
                wt = [-1] * pattern_size
                wt[i1] = ia
                wt[i2] = ib
                pos = 0
                for (t, _, _, _) in tables:
                    wt[t] = hits[pos]
                    pos += 1
                witnesses.append(tuple(wt))
    return count, witnesses


def _chunk_worker(args):
    return _scan_pairs(*args)


def _ordered_matches(base: Sequence[CycloNum], anchors: tuple[int, int],
                     target: Sequence[CycloNum], *, collect: int | None = 0,
                     workers: int = 1) -> tuple[int, list[tuple[int, ...]]]:
    """Count ordered anchor-image pairs; target order defines witness
    indices and is preserved."""
    order = common_order(*(p.order for p in base),
                         *(p.order for p in target))
    base_l = [p.lift(order) for p in base]
    target_l = [p.lift(order) for p in target]
    vecs = _integerize(target_l)
    tables = _probe_tables(base_l, anchors, vecs)
    n = len(vecs)
    if workers <= 1 or n < 64:
        return _scan_pairs(order, vecs, tables, 0, n, collect,
                           anchors, len(base_l))
    bounds = [round(i * n / workers) for i in range(workers + 1)]
    jobs = [(order, vecs, tables, bounds[i], bounds[i + 1], collect,
             anchors, len(base_l)) for i in range(workers)]
    with multiprocessing.Pool(workers) as pool:
        parts = pool.map(_chunk_worker, jobs)
    count = sum(c for c, _ in parts)
    witnesses: list[tuple[int, ...]] = []
    for _, ws in parts:
        witnesses.extend(ws)
    if collect is not None:
        witnesses = witnesses[:collect]
    return count, witnesses


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def proper_symmetry_order(base: PointSet) -> int:
    """Number of direct similarities mapping the set onto itself.

    Any similarity fixing a finite set preserves its diameter, so these
    are exactly the rotations of the set; a k-gon pattern gives k, an
    asymmetric pattern gives 1.
    """
    if len(base) < 3:
        raise PreconditionError("symmetry order needs at least 3 points")
    n, _ = _ordered_matches(base.points, (0, 1), base.points, collect=0)
    if n < 1:
        raise RuntimeError("internal: identity self-map not found")
    return n


def count_similar(pattern: Pattern, target: PointSet, *,
                  witness_cap: int = WITNESS_CAP,
                  full_witnesses: bool = False,
                  workers: int = 1) -> CountReport:
    """Exact number of subsets of the target similar to the pattern."""
    n = len(target)
    sym = pattern.sym_order
    if n < pattern.size:
        return CountReport(pattern.size, sym, n, 0, 0, 1.0, (), full_witnesses)
    collect: int | None = None if full_witnesses else witness_cap
    matches, wits = _ordered_matches(
        pattern.base.points, pattern.anchors, target.points,
        collect=collect, workers=workers)
    if matches % sym:
        raise RuntimeError(
            f"internal: {matches} ordered matches not divisible by "
            f"symmetry order {sym}")
    copies = matches // sym
    if matches > n * n - n:
        raise RuntimeError("internal: ordered matches exceed the pair bound")
    idx = 1.0 if copies == 0 else math.log(matches + n) / math.log(n)
    if not 1.0 <= idx <= 2.0:
        raise RuntimeError(f"internal: similarity index {idx} out of [1, 2]")
    return CountReport(pattern.size, sym, n, matches, copies, idx,
                       tuple(wits), full_witnesses)


def index(pattern: Pattern, target: PointSet) -> float:
    """Similarity index log(I*S + n)/log(n); runs a full count."""
    return count_similar(pattern, target, witness_cap=0).index


def brute_force_count(pattern: Pattern, target: PointSet,
                      limit: int = 10_000_000) -> int:
    """Oracle count by exhaustive subset enumeration.

    Each k-subset is tested for similarity to the pattern by trying every
    ordered pair of its points as anchor images, with plain field
    arithmetic throughout.  Guarded by C(n, k) <= limit.
    """
    n = len(target)
    k = pattern.size
    if k > n:
        return 0
    total = math.comb(n, k)
    if total > limit:
        raise OracleGuardError(
            f"C({n},{k}) = {total} subsets exceed the oracle guard {limit}")
    order = common_order(pattern.base.order, target.order)
    pts = [p.lift(order) for p in target.points]
    base = [p.lift(order) for p in pattern.base.points]
    i1, i2 = pattern.anchors
    p1, p2 = base[i1], base[i2]
    diff = p2 - p1
    probes = [(base[t] - p1) / diff for t in range(k)
              if t != i1 and t != i2]
    count = 0
    for combo in combinations(range(n), k):
        group = [pts[i] for i in combo]
        members = {p.coeffs for p in group}
        if _subset_similar(group, members, probes):
            count += 1
    return count


def _subset_similar(group, members, probes) -> bool:
    for a in group:
        for b in group:
            if a is b:
                continue
            d = b - a
            for lam in probes:
                if (a + d * lam).coeffs not in members:
                    break
            else:
                return True
    return False


def subset_regular_bound(pattern: Pattern, regular: Pattern,
                         target: PointSet,
                         claim_prefix: str = "subset") -> list[Claim]:
    """Bound the pattern count through a regular polygon containing it.

    When the pattern base is a subset of a regular k-gon's vertex set,
    every copy of the polygon contributes |R|/I distinct copies of the
    pattern, and distinct polygon copies contribute disjoint families, so
    S_P(A) >= S_R(A) * |R| / I and the similarity indices compare the
    same way.
    """
    r = len(regular.base)
    if regular.sym_order != r:
        raise PreconditionError(
            "the bounding pattern must be a regular polygon "
            f"(symmetry order {regular.sym_order} != size {r})")
    order = common_order(pattern.base.order, regular.base.order)
    rbase = regular.base.lift(order)
    for p in pattern.base:
        if p.lift(order) not in rbase:
            raise PreconditionError(
                "pattern base is not a subset of the regular polygon")
    sym = pattern.sym_order
    in_regular = count_similar(pattern, regular.base)
    expected_in_regular = r // sym if r % sym == 0 else r / sym
    reg_count = count_similar(regular, target)
    pat_count = count_similar(pattern, target)
    bound = reg_count.copies * r
    expected_bound = bound // sym if bound % sym == 0 else bound / sym
    return [
        Claim(f"{claim_prefix}.pattern_in_regular",
              "the regular polygon carries size/symmetry many pattern copies",
              "exact", expected_in_regular, in_regular.copies),
        Claim(f"{claim_prefix}.count_bound",
              "pattern copies dominate polygon copies times size/symmetry",
              "lower", expected_bound, pat_count.copies),
        Claim(f"{claim_prefix}.index_bound",
              "pattern similarity index dominates the polygon's",
              "lower", reg_count.index, pat_count.index, tolerance=1e-12),
    ]

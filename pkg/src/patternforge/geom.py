"""Exact planar geometry for cyclotomic point sets.

Points are CycloNum values read as complex numbers.  All predicates are
decided exactly on coefficient vectors; no floating-point shortcut is
taken anywhere.

A direction (difference of two points) is classified up to nonzero real
scalar multiples by the invariant kappa(d) = d / conj(d): two nonzero
differences are parallel iff their kappa values coincide.  kappa is
invariant under every real scaling, including the irrational real
numbers inside the field, which a naive normalization of the coefficient
vector would miss.  The quotient is computed once per primitive integer
direction vector and cached, so the quadratic pair scans below mostly
pay one gcd and one hash per pair.
"""

from __future__ import annotations

import functools
import math
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import (DegenerateInputError, DuplicatePointError,
                     OrderMismatchError)
from .exactnum import CycloNum, common_order, field, from_coeffs

__all__ = [
    "PointSet", "collinear", "max_collinear", "find_parallelogram",
    "has_parallel_segments",
]


def _denominator_lcm(points: Sequence[CycloNum]) -> int:
    q = 1
    for p in points:
        for c in p.coeffs:
            q = math.lcm(q, c.denominator)
    return q


class PointSet:
    """An immutable, duplicate-free, canonically ordered set of points.

    Points are sorted by their coefficient vectors, so two sets with equal
    contents serialize identically and anchor choices made by position are
    reproducible.
    """

    __slots__ = ("order", "points", "_pos", "_int_cache")

    def __init__(self, points: Iterable[CycloNum], *, order: int | None = None):
        pts = list(points)
        if not pts and order is None:
            raise ValueError("empty point set needs an explicit conductor")
        if order is None:
            order = pts[0].order
        for p in pts:
            if p.order != order:
                raise OrderMismatchError(
                    f"point conductor {p.order} differs from set conductor "
                    f"{order}; lift points first")
        pts.sort(key=lambda p: p.coeffs)
        pos: dict[tuple, int] = {}
        for i, p in enumerate(pts):
            if p.coeffs in pos:
                raise DuplicatePointError(f"repeated point {p}")
            pos[p.coeffs] = i
        self.order = order
        self.points = tuple(pts)
        self._pos = pos
        self._int_cache: tuple[int, tuple[tuple[int, ...], ...]] | None = None

    @classmethod
    def from_points(cls, points: Iterable[CycloNum]) -> "PointSet":
        """Build a set from points of possibly different conductors by
        lifting everything to their lcm conductor."""
        pts = list(points)
        if not pts:
            raise ValueError("empty point set needs an explicit conductor")
        order = common_order(*(p.order for p in pts))
        return cls([p.lift(order) for p in pts])

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[CycloNum]:
        return iter(self.points)

    def __getitem__(self, i: int) -> CycloNum:
        return self.points[i]

    def __eq__(self, other):
        if not isinstance(other, PointSet):
            return NotImplemented
        return self.order == other.order and self.points == other.points

    def __hash__(self):
        return hash((self.order, tuple(p.coeffs for p in self.points)))

    def __repr__(self) -> str:
        return f"<PointSet n={len(self.points)} conductor={self.order}>"

    def index_of(self, p: CycloNum) -> int | None:
        if p.order != self.order:
            if self.order % p.order:
                raise OrderMismatchError(
                    f"cannot look up conductor {p.order} in a conductor "
                    f"{self.order} set")
            p = p.lift(self.order)
        return self._pos.get(p.coeffs)

    def __contains__(self, p: CycloNum) -> bool:
        return self.index_of(p) is not None

    def lift(self, order: int) -> "PointSet":
        if order == self.order:
            return self
        return PointSet([p.lift(order) for p in self.points])

    def transformed(self, scale=1, offset=0) -> "PointSet":
        """The image of the set under z -> scale*z + offset."""
        pts = list(self.points)
        orders = [self.order]
        if isinstance(scale, CycloNum):
            orders.append(scale.order)
        if isinstance(offset, CycloNum):
            orders.append(offset.order)
        m = common_order(*orders)
        s = scale.lift(m) if isinstance(scale, CycloNum) else scale
        o = offset.lift(m) if isinstance(offset, CycloNum) else offset
        return PointSet([p.lift(m) * s + o for p in pts])

    def int_vectors(self) -> tuple[int, tuple[tuple[int, ...], ...]]:
        """Common denominator Q and the integer vectors Q*p, in set order.

        Scaling by the positive rational Q is a similarity, so every
        combinatorial question (collinearity, midpoint coincidence,
        similarity counting) transfers verbatim to the integer vectors.
        """
        if self._int_cache is None:
            q = _denominator_lcm(self.points)
            vecs = tuple(tuple(int(c * q) for c in p.coeffs)
                         for p in self.points)
            self._int_cache = (q, vecs)
        return self._int_cache


# ---------------------------------------------------------------------------
# direction classes
# ---------------------------------------------------------------------------

def _primitive(vec: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for v in vec:
        g = math.gcd(g, v)
    out = tuple(v // g for v in vec)
    for v in out:
        if v > 0:
            return out
        if v < 0:
            return tuple(-x for x in out)
    raise DegenerateInputError("zero direction vector")


@functools.lru_cache(maxsize=None)
def _direction_class(order: int, prim: tuple[int, ...]) -> tuple:
    x = from_coeffs(order, prim)
    return (x / x.conj()).coeffs


def _dir_key(order: int, dvec: Sequence[int]) -> tuple:
    return _direction_class(order, _primitive(dvec))


# ---------------------------------------------------------------------------
# predicates
# ---------------------------------------------------------------------------

def collinear(a: CycloNum, b: CycloNum, c: CycloNum) -> bool:
    """Whether three pairwise distinct points lie on one line.

    Decided as is_real((c-a) * conj(b-a)), which equals the realness of
    (c-a)/(b-a) because the two differ by the positive real factor
    |b-a|^2.
    """
    d1 = b - a
    d2 = c - a
    if d1.is_zero() or d2.is_zero() or (c - b).is_zero():
        raise DegenerateInputError("collinear() needs three distinct points")
    return (d2 * d1.conj()).is_real()


def max_collinear(s: PointSet) -> int:
    """Size of the largest collinear subset.

    For every anchor point the directions to all other points are grouped
    by exact direction class, an O(n^2) sweep overall.
    """
    n = len(s)
    if n == 0:
        raise DegenerateInputError("max_collinear() needs a non-empty set")
    if n <= 2:
        return n
    _, vecs = s.int_vectors()
    order = s.order
    best = 2
    for i in range(n):
        vi = vecs[i]
        groups: dict[tuple, int] = {}
        for j in range(n):
            if j == i:
                continue
            d = tuple(a - b for a, b in zip(vecs[j], vi))
            key = _dir_key(order, d)
            groups[key] = groups.get(key, 0) + 1
        top = max(groups.values()) + 1
        if top > best:
            best = top
    return best


def find_parallelogram(
        s: PointSet) -> tuple[CycloNum, CycloNum, CycloNum, CycloNum] | None:
    """First quadruple (a, b, c, d) of distinct points with a + c == b + d,
    or None.

    Two distinct unordered pairs sharing a coordinate sum are automatically
    disjoint, so hashing the n(n-1)/2 pair sums finds a witness in O(n^2).
    """
    n = len(s)
    if n < 4:
        return None
    _, vecs = s.int_vectors()
    sums: dict[tuple, tuple[int, int]] = {}
    for i in range(n):
        vi = vecs[i]
        for j in range(i + 1, n):
            key = tuple(a + b for a, b in zip(vi, vecs[j]))
            prev = sums.get(key)
            if prev is not None:
                a, c = prev
                return (s.points[a], s.points[i], s.points[c], s.points[j])
            sums[key] = (i, j)
    return None


def has_parallel_segments(s: PointSet) -> bool:
    """Whether two vertex-disjoint segments with parallel directions exist.

    Fewer than four points cannot carry two disjoint segments, so such
    sets report False.
    """
    n = len(s)
    if n < 4:
        return False
    _, vecs = s.int_vectors()
    order = s.order
    groups: dict[tuple, list[tuple[int, int]]] = {}
    for i in range(n):
        vi = vecs[i]
        for j in range(i + 1, n):
            d = tuple(a - b for a, b in zip(vecs[j], vi))
            key = _dir_key(order, d)
            bucket = groups.setdefault(key, [])
            for (x, y) in bucket:
                if x != i and x != j and y != i and y != j:
                    return True
            bucket.append((i, j))
    return False

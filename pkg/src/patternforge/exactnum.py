"""Exact arithmetic in the cyclotomic fields Q(zeta_M).

A value is a rational coefficient vector over the power basis
{zeta_M^i : 0 <= i < phi(M)}, kept reduced modulo the M-th cyclotomic
polynomial Phi_M.  Because Phi_M is irreducible over Q, the reduced
vector is unique, so equality of values is equality of vectors and every
predicate built on top of this module is decidable with no rounding.

Supported operations:

* field arithmetic (+, -, *, /) with exact rational coefficients,
  division via the extended Euclidean algorithm in Q[x] mod Phi_M;
* complex conjugation, zeta_M -> zeta_M^(M-1), which generates the
  restriction of complex conjugation to the field;
* realness test (a value is real iff it equals its conjugate);
* lifting Q(zeta_m) -> Q(zeta_M) for m | M via zeta_m = zeta_M^(M/m);
* numeric evaluation at a requested binary precision (>= 53 bits);
* a canonical text form "M:[c0,c1,...]" with rationals as "p/q" strings.

Values of different conductors never mix silently: binary operations
raise OrderMismatchError and callers lift explicitly (or via helpers
that compute the lcm conductor).
"""

from __future__ import annotations

import functools
import math
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath

from .errors import LiftError, OrderMismatchError

Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


# ---------------------------------------------------------------------------
# integer polynomial helpers (little-endian coefficient lists)
# ---------------------------------------------------------------------------

def _trim(p: list) -> list:
    while p and not p[-1]:
        p.pop()
    return p


def _poly_mul(a: Sequence, b: Sequence) -> list:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return out


def _poly_divmod_exact(num: Sequence[int], den: Sequence[int]) -> list[int]:
    """Exact quotient of integer polynomials; den must divide num and be monic
    up to sign."""
    num = list(num)
    lead = den[-1]
    dd = len(den)
    quot = [0] * (len(num) - dd + 1)
    for k in range(len(num) - dd, -1, -1):
        c = num[k + dd - 1]
        if c % lead:
            raise ArithmeticError("non-exact polynomial division")
        c //= lead
        quot[k] = c
        if c:
            for i, dc in enumerate(den):
                num[k + i] -= c * dc
    if any(num):
        raise ArithmeticError("non-exact polynomial division")
    return quot


def _mobius(n: int) -> int:
    mu = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            mu = -mu
        d += 1
    if n > 1:
        mu = -mu
    return mu


def _divisors(n: int) -> list[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def totient(n: int) -> int:
    result = n
    d = 2
    m = n
    while d * d <= m:
        if m % d == 0:
            while m % d == 0:
                m //= d
            result -= result // d
        d += 1
    if m > 1:
        result -= result // m
    return result


@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(order: int) -> tuple[int, ...]:
    """Coefficients of Phi_order, little-endian, computed from the Moebius
    factorization of x^order - 1."""
    if order < 1:
        raise ValueError("order must be a positive integer")
    num = [1]
    den = [1]
    for d in _divisors(order):
        mu = _mobius(order // d)
        if mu == 0:
            continue
        term = [-1] + [0] * (d - 1) + [1]  # x^d - 1
        if mu == 1:
            num = _poly_mul(num, term)
        else:
            den = _poly_mul(den, term)
    coeffs = _poly_divmod_exact(num, den)
    assert len(coeffs) == totient(order) + 1 and coeffs[-1] == 1
    return tuple(coeffs)


# ---------------------------------------------------------------------------
# per-conductor precomputed data
# ---------------------------------------------------------------------------

class CycloField:
    """Precomputed reduction data for one conductor.

    Reduction rows express zeta^t (t >= phi) in the power basis; they have
    integer entries because Phi_M is monic with integer coefficients, so
    products of integer vectors reduce to integer vectors.
    """

    __slots__ = ("order", "phi", "modulus", "power_rows", "_conj_rows",
                 "zero_coeffs", "one_coeffs")

    def __init__(self, order: int):
        self.order = order
        self.modulus = cyclotomic_polynomial(order)
        phi = len(self.modulus) - 1
        self.phi = phi
        top = max(order - 1, 2 * phi - 2)
        rows: list[tuple[int, ...]] = []
        for e in range(phi):
            rows.append(tuple(1 if i == e else 0 for i in range(phi)))
        # x^phi == -(low part of Phi); every higher power reduces through it
        red_row = tuple(-c for c in self.modulus[:phi])
        for _ in range(phi, top + 1):
            prev = rows[-1]
            shifted = [0] + list(prev[:-1])
            carry = prev[-1]
            if carry:
                for i in range(phi):
                    shifted[i] += carry * red_row[i]
            rows.append(tuple(shifted))
        self.power_rows = tuple(rows)
        self._conj_rows = tuple(self.power_rows[(order - e) % order]
                                for e in range(phi))
        self.zero_coeffs = tuple(_ZERO for _ in range(phi))
        self.one_coeffs = tuple(_ONE if i == 0 else _ZERO for i in range(phi))

    # -- reduction and products -------------------------------------------

    def reduce(self, prod: list) -> tuple:
        """Reduce a raw product (length <= 2*phi-1) into the power basis."""
        phi = self.phi
        out = list(prod[:phi])
        out.extend([prod[0] * 0] * (phi - len(out)))
        for t in range(len(prod) - 1, phi - 1, -1):
            c = prod[t]
            if c:
                row = self.power_rows[t]
                for i in range(phi):
                    out[i] += c * row[i]
        return tuple(out)

    def mul(self, a: Sequence, b: Sequence) -> tuple:
        phi = self.phi
        prod = [a[0] * 0] * (2 * phi - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        return self.reduce(prod)

    def conj(self, a: Sequence) -> tuple:
        phi = self.phi
        out = [a[0] * 0] * phi
        for e, c in enumerate(a):
            if c:
                row = self._conj_rows[e]
                for i in range(phi):
                    out[i] += c * row[i]
        return tuple(out)

    def inverse(self, a: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """Extended Euclid in Q[x] modulo Phi: returns coeffs of a^-1."""
        r1 = _trim([Fraction(c) for c in a])
        if not r1:
            raise ZeroDivisionError("division by zero in cyclotomic field")
        r0 = [Fraction(c) for c in self.modulus]
        s0: list[Fraction] = []
        s1: list[Fraction] = [_ONE]
        while len(r1) > 1:
            quot, rem = _frac_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _trim(_frac_sub(s0, _poly_mul(quot, s1)))
            if not r1:
                raise ZeroDivisionError("division by zero in cyclotomic field")
        c = r1[0]
        inv = [s / c for s in s1]
        inv.extend([_ZERO] * (self.phi - len(inv)))
        return self.reduce(inv[: 2 * self.phi - 1])


def _frac_divmod(num: list[Fraction], den: list[Fraction]):
    num = list(num)
    dd = len(den)
    lead = den[-1]
    quot = [_ZERO] * max(0, len(num) - dd + 1)
    for k in range(len(num) - dd, -1, -1):
        c = num[k + dd - 1] / lead
        if c:
            quot[k] = c
            for i, dc in enumerate(den):
                num[k + i] -= c * dc
    return quot, _trim(num)


def _frac_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else _ZERO
        y = b[i] if i < len(b) else _ZERO
        out.append(x - y)
    return out


@functools.lru_cache(maxsize=None)
def field(order: int) -> CycloField:
    return CycloField(order)


# ---------------------------------------------------------------------------
# field elements
# ---------------------------------------------------------------------------

class CycloNum:
    """One element of Q(zeta_M) in reduced power-basis form."""

    __slots__ = ("field", "coeffs")

    def __init__(self, fld: CycloField, coeffs: Iterable):
        self.field = fld
        cs = tuple(c if isinstance(c, Fraction) else Fraction(c)
                   for c in coeffs)
        if len(cs) != fld.phi:
            raise ValueError(
                f"need {fld.phi} coefficients for conductor {fld.order}, "
                f"got {len(cs)}")
        self.coeffs = cs

    # -- constructors -------------------------------------------------------

    @property
    def order(self) -> int:
        return self.field.order

    def _coerce(self, other):
        if isinstance(other, CycloNum):
            if other.field.order != self.field.order:
                raise OrderMismatchError(
                    f"conductor mismatch: {self.field.order} vs "
                    f"{other.field.order}; lift operands first")
            return other
        if isinstance(other, (int, Fraction)):
            return rational(self.field.order, Fraction(other))
        return None

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycloNum(self.field,
                        tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycloNum(self.field,
                        tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return CycloNum(self.field, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycloNum(self.field, self.field.mul(self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * CycloNum(self.field, self.field.inverse(o.coeffs))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * CycloNum(self.field, self.field.inverse(self.coeffs))

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return (one(self.order) / self) ** (-exponent)
        result = one(self.order)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- structure -----------------------------------------------------------

    def conj(self) -> "CycloNum":
        """Complex conjugate, induced by zeta_M -> zeta_M^(M-1)."""
        return CycloNum(self.field, self.field.conj(self.coeffs))

    def is_real(self) -> bool:
        return self.coeffs == self.field.conj(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, CycloNum):
            if other.field.order != self.field.order:
                raise OrderMismatchError(
                    f"cannot compare conductors {self.field.order} and "
                    f"{other.field.order}; lift operands first")
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        return hash((self.field.order, self.coeffs))

    def lift(self, order: int) -> "CycloNum":
        """Re-express this value in Q(zeta_order); requires self.order | order."""
        if order == self.order:
            return self
        if order % self.order:
            raise LiftError(
                f"cannot lift conductor {self.order} into {order}: "
                f"not a multiple")
        target = field(order)
        ratio = order // self.order
        out = [_ZERO] * target.phi
        for e, c in enumerate(self.coeffs):
            if c:
                row = target.power_rows[(e * ratio) % order]
                for i in range(target.phi):
                    out[i] += c * row[i]
        return CycloNum(target, out)

    def to_float(self, precision: int = 53):
        """Numeric value as an mpmath complex number at >= 53 bits."""
        if precision < 53:
            raise ValueError("precision below 53 bits is not supported")
        with mpmath.workprec(precision + 10):
            z = mpmath.expjpi(mpmath.mpf(2) / self.order)
            acc = mpmath.mpc(0)
            for c in reversed(self.coeffs):
                acc = acc * z + mpmath.mpf(c.numerator) / c.denominator
            return +acc

    # -- text form -----------------------------------------------------------

    def to_text(self) -> str:
        body = ",".join(str(c) for c in self.coeffs)
        return f"{self.order}:[{body}]"

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"CycloNum('{self.to_text()}')"


# ---------------------------------------------------------------------------
# constructors and helpers
# ---------------------------------------------------------------------------

def from_coeffs(order: int, coeffs: Iterable) -> CycloNum:
    return CycloNum(field(order), coeffs)


def rational(order: int, value) -> CycloNum:
    f = field(order)
    v = Fraction(value)
    return CycloNum(f, (v,) + (_ZERO,) * (f.phi - 1))


def zero(order: int) -> CycloNum:
    return rational(order, 0)


def one(order: int) -> CycloNum:
    return rational(order, 1)


def zeta(order: int, exponent: int = 1) -> CycloNum:
    """zeta_order^exponent, reduced into the power basis."""
    f = field(order)
    row = f.power_rows[exponent % order]
    return CycloNum(f, row)


def gaussian(order: int, re, im=0) -> CycloNum:
    """The Gaussian rational re + im*i inside Q(zeta_order); needs 4 | order."""
    if order % 4:
        raise LiftError(f"conductor {order} does not contain i (needs 4 | M)")
    return rational(order, re) + rational(order, im) * zeta(order, order // 4)


def from_text(text: str) -> CycloNum:
    """Parse the canonical form "M:[c0,c1,...]"."""
    head, sep, body = text.partition(":")
    if not sep or not body.startswith("[") or not body.endswith("]"):
        raise ValueError(f"malformed cyclotomic literal: {text!r}")
    try:
        order = int(head)
        parts = body[1:-1].split(",") if body != "[]" else []
        coeffs = [Fraction(p.strip()) for p in parts]
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed cyclotomic literal: {text!r}") from exc
    if order < 1:
        raise ValueError(f"malformed cyclotomic literal: {text!r}")
    return from_coeffs(order, coeffs)


def common_order(*orders: int) -> int:
    out = 1
    for m in orders:
        out = math.lcm(out, m)
    return out


def lift_all(values: Sequence[CycloNum], order: int | None = None) -> list[CycloNum]:
    if order is None:
        order = common_order(*(v.order for v in values))
    return [v.lift(order) for v in values]

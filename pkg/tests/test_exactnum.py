import math
import random
from fractions import Fraction

import pytest

from patternforge.errors import LiftError, OrderMismatchError
from patternforge.exactnum import (CycloNum, common_order,
                                   cyclotomic_polynomial, field, from_coeffs,
                                   from_text, gaussian, lift_all, one,
                                   rational, zero, zeta)


def test_cyclotomic_polynomial_small_orders():
    assert cyclotomic_polynomial(1) == (Fraction(-1), Fraction(1))
    assert cyclotomic_polynomial(2) == (Fraction(1), Fraction(1))
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(5) == (1, 1, 1, 1, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(8) == (1, 0, 0, 0, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += Fraction(x) * Fraction(y)
    return out


def test_cyclotomic_product_recovers_xm_minus_1():
    # prod over divisors d of M of Phi_d equals x^M - 1
    for m in (6, 12, 20, 30):
        prod = [Fraction(1)]
        for d in range(1, m + 1):
            if m % d == 0:
                prod = _poly_mul(prod, cyclotomic_polynomial(d))
        expect = [Fraction(0)] * (m + 1)
        expect[0], expect[m] = Fraction(-1), Fraction(1)
        assert prod == expect


def test_degree_matches_totient():
    for m in range(1, 61):
        phi = sum(1 for a in range(1, m + 1) if math.gcd(a, m) == 1)
        assert len(cyclotomic_polynomial(m)) == phi + 1


def _cyclic_square(c):
    # plain convolution in Q[x]/(x^5 - 1), independent of the package's
    # reduction path
    out = [Fraction(0)] * 5
    for i in range(5):
        for j in range(5):
            out[(i + j) % 5] += Fraction(c[i]) * Fraction(c[j])
    return out


def test_sqrt5_identity_against_cyclic_oracle():
    # (1 + 2*zeta5 + 2*zeta5^4)^2 = 5: a vector c in Q[x]/(x^5-1)
    # represents the rational r exactly when c1 = c2 = c3 = c4 and
    # c0 - c1 = r
    c = _cyclic_square([1, 2, 0, 0, 2])
    assert c[1] == c[2] == c[3] == c[4]
    assert c[0] - c[1] == 5

    z = zeta(5, 1)
    v = 1 + 2 * (z + z ** 4)
    assert v * v == 5
    assert (v * v).is_rational()


def test_zeta_basics():
    for m in (3, 4, 5, 8, 12):
        z = zeta(m, 1)
        assert z ** m == 1
        total = sum((z ** k for k in range(1, m)), zero(m))
        assert total == -1  # geometric sum of the nontrivial powers


@pytest.mark.parametrize("m", [4, 12, 20, 24, 40])
def test_field_axioms_random(m):
    rng = random.Random(f"axioms:{m}")
    phi = field(m).phi

    def rnd():
        return from_coeffs(m, [rng.randrange(-3, 4) for _ in range(phi)])

    for trial in range(1000):
        a, b, c = rnd(), rnd(), rnd()
        assert (a + b) * c == a * c + b * c
        assert a + (-a) == 0
        assert (a - b) + b == a
        assert (a * b).conj() == a.conj() * b.conj()
        if trial % 5 == 0 and not b.is_zero():
            assert (a * b) / b == a
            assert (1 / b) * b == 1


def test_conj_is_complex_conjugation():
    z = zeta(12, 1)
    assert z.conj() == z ** 11
    g = gaussian(4, Fraction(3, 7), Fraction(-2, 5))
    assert g.conj() == gaussian(4, Fraction(3, 7), Fraction(2, 5))
    assert (g * g.conj()).is_rational()
    assert g + g.conj() == Fraction(6, 7)


def test_is_real_and_is_rational():
    z = zeta(5, 1)
    v = z + z ** 4  # 2*cos(2*pi/5), real but irrational
    assert v.is_real()
    assert not v.is_rational()
    assert not z.is_real()
    assert rational(5, Fraction(7, 3)).is_rational()


def test_lift_homomorphism():
    z6 = zeta(6, 1)
    assert z6.lift(12) == zeta(12, 2)
    rng = random.Random("lift")
    for _ in range(50):
        a = from_coeffs(6, [rng.randrange(-4, 5) for _ in range(2)])
        b = from_coeffs(6, [rng.randrange(-4, 5) for _ in range(2)])
        assert (a * b).lift(12) == a.lift(12) * b.lift(12)
        assert (a + b).lift(24) == a.lift(24) + b.lift(24)
    with pytest.raises(LiftError):
        zeta(4, 1).lift(6)  # 6 is not a multiple of 4


def test_order_mismatch_raises():
    with pytest.raises(OrderMismatchError):
        zeta(4, 1) == zeta(3, 1)
    with pytest.raises(OrderMismatchError):
        zeta(4, 1) + zeta(3, 1)
    # rational comparisons cross orders fine
    assert rational(4, 2) == 2
    assert rational(3, 2) == rational(3, 2)


def test_hash_consistency():
    a = zeta(12, 4) + 1
    b = 1 + zeta(12, 4)
    assert a == b and hash(a) == hash(b)
    assert hash(rational(4, 3)) == hash(rational(4, 3))


def test_division_round_trip_and_zero_division():
    rng = random.Random("div")
    for _ in range(100):
        a = from_coeffs(20, [rng.randrange(-3, 4) for _ in range(8)])
        if a.is_zero():
            continue
        assert a / a == 1
        inv = 1 / a
        assert inv * a == 1
    with pytest.raises(ZeroDivisionError):
        1 / zero(12)
    with pytest.raises(ZeroDivisionError):
        one(12) / 0


def test_pow():
    z = zeta(8, 1)
    assert z ** 0 == 1
    assert z ** 9 == z
    assert z ** -1 == z.conj()  # |z| = 1
    assert (2 * one(4)) ** -2 == Fraction(1, 4)


def test_to_float():
    z = zeta(5, 1)
    v = 1 + 2 * (z + z ** 4)  # sqrt(5)
    assert abs(v.to_float() - math.sqrt(5)) < 1e-14
    assert abs(zeta(4, 1).to_float() - 1j) < 1e-15
    w = z.to_float(precision=200)
    assert abs(w ** 5 - 1) < 1e-50
    with pytest.raises(ValueError):
        z.to_float(precision=10)


def test_text_round_trip():
    vals = [zeta(12, 7) * Fraction(3, 5) - Fraction(1, 7),
            rational(1, Fraction(-9, 2)), gaussian(4, 2, -3)]
    for v in vals:
        assert from_text(v.to_text()) == v
    assert from_text("4:[1/2,-3]") == gaussian(4, Fraction(1, 2), -3)
    for bad in ("", "x", "4:", "4:[", "4:[1;2]", "0:[1]", "4:[1/0]"):
        with pytest.raises(ValueError):
            from_text(bad)


def test_common_order_and_lift_all():
    assert common_order(4, 6) == 12
    vals = lift_all([zeta(4, 1), zeta(6, 1)])
    assert all(v.order == 12 for v in vals)
    assert vals[0] == zeta(12, 3)


def test_conductor_one_and_two():
    assert rational(1, 5) + rational(1, 2) == 7
    assert zeta(2, 1) == -1
    assert (zeta(2, 1) * zeta(2, 1)).is_rational()


def test_large_conductor_arith():
    # exercise reduction rows beyond M-1 for odd M where 2*phi-2 > M-1
    z = zeta(5, 1)
    v = (z + z ** 2) * (z ** 3 + z ** 4)
    assert v == z ** 4 + 1 + 1 + z  # expand (z+z^2)(z^3+z^4) mod z^5=1

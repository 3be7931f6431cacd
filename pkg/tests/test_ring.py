import math
import random
from fractions import Fraction

import pytest

from hermlift.ring import HeckeRing, INF, primes_above, val_at


GAUSS = HeckeRing([1, 0, 1])  # x^2 + 1
FIB = HeckeRing([-1, -1, 1])  # x^2 - x - 1
ZZ = HeckeRing([0, 1])  # degree one: plain integers


def test_gen_squares_to_minus_one():
    x = GAUSS.gen()
    assert x * x == GAUSS.from_int(-1)


def test_degree_one_ring_is_integer_arithmetic():
    a, b = ZZ.from_int(3), ZZ.from_int(4)
    assert a * b == ZZ.from_int(12)


def test_golden_ratio_relation():
    x = FIB.gen()
    assert x * x == x + FIB.one()


def test_division_by_unit_and_errors():
    x = GAUSS.gen()
    y = (x + GAUSS.from_int(2))
    assert y * y.inverse() == GAUSS.one()
    with pytest.raises(ZeroDivisionError):
        GAUSS.zero().inverse()
    with pytest.raises(ValueError):
        GAUSS.one() + ZZ.one()


def test_zero_divisor_rejected():
    r = HeckeRing([0, -1, 0, 1])  # x^3 - x = x(x-1)(x+1), squarefree
    with pytest.raises(ZeroDivisionError):
        r.gen().inverse()  # x is a zero divisor


def test_squarefree_required():
    with pytest.raises(ValueError):
        HeckeRing([0, 0, 1])  # x^2


def test_rational_coordinates_and_denominators():
    e = GAUSS.element([Fraction(1, 2), Fraction(1, 3)])
    assert e.den == 6 and e.num == (3, 2)
    assert (e * 6).is_integral()


def test_ring_axioms_randomized():
    rng = random.Random(1)
    for ring in (GAUSS, FIB, HeckeRing([2, 0, -3, 1])):
        els = [
            ring.element([rng.randrange(-9, 10) for _ in range(ring.degree)], rng.randrange(1, 5))
            for _ in range(6)
        ]
        for a in els:
            for b in els:
                assert a + b == b + a
                assert a * b == b * a
                for c in els:
                    assert (a + b) * c == a * c + b * c
                    assert (a * b) * c == a * (b * c)


def test_norm_is_multiplicative():
    rng = random.Random(2)
    for _ in range(20):
        a = GAUSS.element([rng.randrange(-9, 10), rng.randrange(-9, 10)])
        b = GAUSS.element([rng.randrange(-9, 10), rng.randrange(-9, 10)])
        assert (a * b).norm() == a.norm() * b.norm()


def test_primes_above_split_and_inert():
    ps = primes_above(GAUSS, 5)
    assert len(ps) == 2 and all(p.residue_degree == 1 for p in ps)
    factors = sorted(p.local_factor for p in ps)
    assert factors == [(2, 1), (3, 1)]  # x+2 and x+3, i.e. x-3 and x-2 mod 5

    ps3 = primes_above(GAUSS, 3)
    assert len(ps3) == 1 and ps3[0].residue_degree == 2

    psz = primes_above(ZZ, 7)
    assert len(psz) == 1 and psz[0].residue_degree == 1


def test_primes_above_refuses_bad_ell():
    with pytest.raises(ValueError):
        primes_above(GAUSS, 2)
    # disc(x^2+1) = -4; no odd prime divides it, so use a ring where one does
    r = HeckeRing([3, 0, 1])  # disc = -12, divisible by 3
    with pytest.raises(ValueError):
        primes_above(r, 3)


def test_val_at_examples():
    p5 = primes_above(ZZ, 5)[0]
    assert val_at(p5, ZZ.from_int(50)) == 2
    assert val_at(p5, ZZ.from_int(0)) == INF
    assert val_at(p5, ZZ.from_rational(Fraction(1, 5))) == -1

    # x+3 at the prime (5, x-2): residue 2+3 = 5 = 0 mod 5, exactly once
    pr = next(p for p in primes_above(GAUSS, 5) if p.local_factor == (3, 1))
    v = val_at(pr, GAUSS.element([3, 1]))
    assert v == 1
    # and at the other prime (5, x+3... i.e. x-(-3)=x+3 -> factor (2,1) is x+2)
    other = next(p for p in primes_above(GAUSS, 5) if p.local_factor == (2, 1))
    assert val_at(other, GAUSS.element([3, 1])) == 0


def test_val_additivity_and_ultrametric():
    rng = random.Random(3)
    for ell in (5, 13):
        for prime in primes_above(GAUSS, ell):
            for _ in range(25):
                a = GAUSS.element([rng.randrange(-50, 51), rng.randrange(-50, 51)])
                b = GAUSS.element([rng.randrange(-50, 51), rng.randrange(-50, 51)])
                if a.is_zero() or b.is_zero():
                    continue
                assert val_at(prime, a * b) == val_at(prime, a) + val_at(prime, b)
                s = a + b
                if not s.is_zero():
                    assert val_at(prime, s) >= min(val_at(prime, a), val_at(prime, b))


def test_val_against_norm():
    rng = random.Random(4)
    for ell in (5, 13, 17):
        primes = primes_above(GAUSS, ell)
        for _ in range(20):
            a = GAUSS.element([rng.randrange(-40, 41), rng.randrange(-40, 41)])
            if a.is_zero():
                continue
            total = sum(p.residue_degree * val_at(p, a) for p in primes)
            nv = 0
            n = a.norm()
            assert n.denominator == 1
            n = int(n)
            while n % ell == 0:
                n //= ell
                nv += 1
            assert total == nv


def test_involutions():
    x = GAUSS.gen()
    e = GAUSS.from_int(3) + x * 2
    assert e.apply_involution("trivial") == e
    assert e.apply_involution("negate-x") == GAUSS.from_int(3) - x * 2
    with pytest.raises(ValueError):
        FIB.one().apply_involution("negate-x")  # x^2-x-1 is neither even nor odd

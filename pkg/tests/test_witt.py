"""Witt vector rings: axioms, ghost coordinates, and carry polynomials."""

import math
import random

import pytest

from wildram.errors import LengthMismatch
from wildram.field import FqPoly, make_field
from wildram.witt import (
    psi_carry,
    witt2_add,
    witt2_neg,
    witt2_sub,
    witt_ring,
    witt_trace,
    witt_wp,
)

CONFIGS = [(2, 1, 2), (2, 2, 3), (3, 1, 2), (3, 2, 2), (5, 1, 3), (5, 2, 2)]


def _rand_vec(ring, ctx, rng):
    return ring.vec([ctx.elem([rng.randrange(ctx.p) for _ in range(ctx.e)])
                     for _ in range(ring.n)])


def test_ring_axioms():
    rng = random.Random(31)
    for p, e, n in CONFIGS:
        ctx = make_field(p, e)
        ring = witt_ring(ctx, n)
        zero, one = ring.zero, ring.one
        for _ in range(1000):
            a = _rand_vec(ring, ctx, rng)
            b = _rand_vec(ring, ctx, rng)
            c = _rand_vec(ring, ctx, rng)
            assert a + b == b + a
            assert (a + b) + c == a + (b + c)
            assert a + zero == a
            assert a + (zero - a) == zero
            assert a * b == b * a
            assert (a * b) * c == a * (b * c)
            assert a * one == a
            assert a * (b + c) == a * b + a * c


def test_ghost_homomorphism_prime_fields():
    # over F_p a length-n vector lifts to Z/p^n through ghost coordinates
    rng = random.Random(32)
    for p in (2, 3, 5):
        ctx = make_field(p, 1)
        ring = witt_ring(ctx, 3)

        def ghost(v, i):
            coords = [x.coeffs[0] for x in v.coords]
            return sum(p ** j * pow(coords[j], p ** (i - j), p ** (i + 1))
                       for j in range(i + 1)) % p ** (i + 1)

        for _ in range(200):
            a = _rand_vec(ring, ctx, rng)
            b = _rand_vec(ring, ctx, rng)
            for i in range(3):
                m = p ** (i + 1)
                assert ghost(a + b, i) == (ghost(a, i) + ghost(b, i)) % m
                assert ghost(a * b, i) == (ghost(a, i) * ghost(b, i)) % m


def test_teichmueller_is_multiplicative():
    ctx = make_field(3, 2)
    ring = witt_ring(ctx, 3)
    for a in ctx.elements():
        for b in list(ctx.elements())[:4]:
            assert ring.teichmueller(a) * ring.teichmueller(b) \
                == ring.teichmueller(a * b)


def test_frobenius_and_wp():
    rng = random.Random(33)
    ctx = make_field(2, 2)
    ring = witt_ring(ctx, 2)
    for _ in range(100):
        a = _rand_vec(ring, ctx, rng)
        b = _rand_vec(ring, ctx, rng)
        assert a.frobenius() == ring.vec([x.frobenius() for x in a.coords])
        # wp = F - 1 is additive
        assert witt_wp(a + b) == witt_wp(a) + witt_wp(b)
        t = witt_trace(a)
        # trace lands in the F-fixed subring
        assert t.frobenius() == t


def test_psi_carry_p2_is_product():
    ctx = make_field(2, 2)
    for a in ctx.elements():
        for b in ctx.elements():
            pa = FqPoly(ctx, ((0, a),) if not a.is_zero() else ())
            pb = FqPoly(ctx, ((0, b),) if not b.is_zero() else ())
            assert psi_carry(pa, pb) == pa * pb


def test_psi_carry_p3_coefficient():
    # the degree-(2,1) carry coefficient is binom(3,2)/3 = 1 mod 3
    assert math.comb(3, 2) // 3 % 3 == 1
    ctx = make_field(3, 1)
    x = FqPoly.x(ctx)
    one = FqPoly(ctx, ((0, ctx.one),))
    out = psi_carry(x, one)
    # psi(a,b) = -sum c(i) a^i b^(3-i) and c(1) = c(2) = 1 here
    assert out.coeff(2) == ctx.elem([2])
    assert out.coeff(1) == ctx.elem([2])


def test_witt2_matches_ring_on_constants():
    rng = random.Random(34)
    ctx = make_field(3, 2)
    ring = witt_ring(ctx, 2)

    def as_pair(v):
        return tuple(FqPoly(ctx, ((0, x),) if not x.is_zero() else ())
                     for x in v.coords)

    def as_vec(pair):
        return ring.vec([pt.coeff(0) for pt in pair])

    for _ in range(60):
        a = _rand_vec(ring, ctx, rng)
        b = _rand_vec(ring, ctx, rng)
        assert as_vec(witt2_add(as_pair(a), as_pair(b))) == a + b
        assert as_vec(witt2_neg(as_pair(a))) == ring.zero - a
        assert as_vec(witt2_sub(as_pair(a), as_pair(b))) == a - b


def test_witt2_on_polynomials():
    ctx = make_field(2, 1)
    x = FqPoly.x(ctx)
    zero = FqPoly.zero(ctx)
    s = witt2_add((x, zero), (x, zero))
    # [X,0] + [X,0] = [0, psi(X,X)] = [0, X^2] in characteristic 2
    assert s[0].is_zero()
    assert s[1] == x * x
    assert witt2_sub((x, zero), (x, zero)) == (zero, zero)


def test_length_mismatch():
    ctx = make_field(2, 1)
    ring2 = witt_ring(ctx, 2)
    ring3 = witt_ring(ctx, 3)
    with pytest.raises(LengthMismatch):
        ring2.one + ring3.one


def test_json_round_trip():
    ctx = make_field(5, 1)
    ring = witt_ring(ctx, 2)
    v = ring.vec([ctx.elem([3]), ctx.elem([4])])
    assert ring.from_json(v.to_json()) == v

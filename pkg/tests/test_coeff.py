import random

import pytest

from wittlat.coeff import RingParams, least_irreducible, make_ring
from wittlat.errors import PrecisionError, UsageError


def test_least_irreducible_choices():
    assert least_irreducible(2, 2) == (1, 1, 1)       # x^2 + x + 1
    assert least_irreducible(3, 2) == (1, 0, 1)       # x^2 + 1
    assert least_irreducible(2, 1) == (0, 1)          # x
    f = least_irreducible(2, 4)
    assert len(f) == 5 and f[4] == 1


def test_params_validation():
    with pytest.raises(UsageError):
        make_ring(RingParams(4, 1, 3))
    with pytest.raises(UsageError):
        make_ring(RingParams(2, 0, 3))
    with pytest.raises(UsageError):
        make_ring(RingParams(2, 1, 0))
    with pytest.raises(UsageError):
        make_ring(RingParams(2, 1, 80))  # p^N over the integer-width bound


def test_m1_ring_is_plain_zpn():
    r = make_ring(RingParams(2, 1, 4))
    assert r.modulus == 16
    seven = r.from_int(7)
    assert r.frobenius(seven) == seven  # sigma is the identity on Z/16


def test_frobenius_lift_defining_properties():
    r = make_ring(RingParams(3, 2, 3))
    sx = r.frobenius(r.gen)
    # congruent to x^3 mod 3, and an exact root of F mod 27
    assert r.residue(sx) == r.residue(r.pow_(r.gen, 3))
    assert r.is_zero(r.eval_f(sx))


def test_frobenius_squared_identity():
    r = make_ring(RingParams(2, 2, 2))
    rng = random.Random(1)
    for _ in range(50):
        a = r.elem([rng.randrange(4), rng.randrange(4)])
        assert r.frobenius(r.frobenius(a)) == a


def test_frobenius_is_ring_automorphism(ring32):
    r = ring32
    rng = random.Random(2)
    for _ in range(1000):
        a = r.elem([rng.randrange(r.modulus) for _ in range(2)])
        b = r.elem([rng.randrange(r.modulus) for _ in range(2)])
        assert r.frobenius(r.mul(a, b)) == r.mul(r.frobenius(a), r.frobenius(b))
        assert r.frobenius(r.add(a, b)) == r.add(r.frobenius(a), r.frobenius(b))
    assert r.frobenius(r.one) == r.one
    # sigma fixes rational integers
    assert r.frobenius(r.from_int(7)) == r.from_int(7)
    # order m exactly, negative powers through sigma^(m-1)
    a = r.elem([5, 11])
    assert r.frobenius(a, 2) == a
    assert r.frobenius(r.frobenius(a, -1)) == a


def test_frobenius_congruent_to_p_power(ring32):
    r = ring32
    rng = random.Random(3)
    for _ in range(200):
        a = r.elem([rng.randrange(r.modulus) for _ in range(2)])
        assert r.residue(r.frobenius(a)) == r.residue(r.pow_(a, r.p))


def test_residue_frobenius_in_f9():
    r = make_ring(RingParams(3, 2, 1))
    assert r.frobenius(r.gen) == r.pow_(r.gen, 3)


def test_valuation():
    r = make_ring(RingParams(3, 2, 4))
    assert r.valuation(r.zero) == 4  # ">= N", not certified zero
    assert r.valuation(r.int_scale(r.from_int(1), 3)) == 1
    assert r.valuation(r.mul_p(r.gen, 3)) == 3
    assert r.valuation(r.one) == 0


def test_valuation_additivity(ring32):
    r = ring32
    rng = random.Random(4)
    for _ in range(300):
        a = r.elem([rng.randrange(r.modulus) for _ in range(2)])
        b = r.elem([rng.randrange(r.modulus) for _ in range(2)])
        va, vb = r.valuation(a), r.valuation(b)
        if va + vb < r.N:
            assert r.valuation(r.mul(a, b)) == va + vb


def test_invert():
    r = make_ring(RingParams(2, 2, 3))
    assert r.invert(r.one) == r.one
    got = r.mul(r.invert(r.gen), r.gen)
    assert got == r.one
    # brute force: the inverse is unique in the finite ring
    inverses = [
        (a0, a1)
        for a0 in range(8)
        for a1 in range(8)
        if r.mul(r.elem([a0, a1]), r.gen) == r.one
    ]
    assert inverses == [tuple(r.invert(r.gen))]


def test_invert_random_units(ring22):
    r = ring22
    rng = random.Random(5)
    count = 0
    while count < 1000:
        a = r.elem([rng.randrange(r.modulus) for _ in range(2)])
        if not r.is_unit(a):
            continue
        assert r.mul(a, r.invert(a)) == r.one
        count += 1
    with pytest.raises(PrecisionError):
        r.invert(r.from_int(2))


def test_ring_axiom_spot_checks(ring22):
    r = ring22
    rng = random.Random(6)
    for _ in range(300):
        a, b, c = (
            r.elem([rng.randrange(r.modulus) for _ in range(2)]) for _ in range(3)
        )
        assert r.mul(a, r.mul(b, c)) == r.mul(r.mul(a, b), c)
        assert r.mul(a, r.add(b, c)) == r.add(r.mul(a, b), r.mul(a, c))


def test_work_ring_consistency(ring22):
    r = ring22
    w = r.work
    assert w.N > r.N and w.fcoeffs == r.fcoeffs
    # the Frobenius root truncates consistently
    assert r.reduce_from_work(w.frobenius(w.gen)) == r.frobenius(r.gen)


def test_describe_header(ring22):
    d = ring22.describe()
    assert d == {"p": 2, "m": 2, "N": 6, "F": [1, 1, 1]}

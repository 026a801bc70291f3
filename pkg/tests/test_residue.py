import random

import pytest

from wittlat import residue as rs
from wittlat.coeff import RingParams, make_ring


@pytest.fixture(scope="module")
def f4(ring22):
    return rs.ResidueField(ring22)


@pytest.fixture(scope="module")
def f9(ring32):
    return rs.ResidueField(ring32)


def test_field_axioms(f9):
    els = f9.all_elements()
    assert len(els) == 9
    for a in els:
        if any(a):
            assert f9.mul(a, f9.inv(a)) == f9.one
        assert f9.frob(a, 2) == a
        assert f9.frob(a) == f9.pow_(a, 3)


def test_subfield_extraction():
    ring = make_ring(RingParams(2, 4, 4))
    f16 = rs.ResidueField(ring)
    sub = f16.subfield_elements(2)
    assert len(sub) == 4
    for a in sub:
        assert f16.frob(a, 2) == a
    # closed under multiplication
    for a in sub:
        for b in sub:
            assert f16.mul(a, b) in sub


def test_rref_canonical(f4, rng):
    n = 4
    for _ in range(30):
        rows = [
            tuple(f4.elem([rng.randrange(2), rng.randrange(2)]) for _ in range(n))
            for _ in range(3)
        ]
        S1 = rs.subspace(f4, n, rows)
        shuffled = list(rows)
        rng.shuffle(shuffled)
        S2 = rs.subspace(f4, n, shuffled)
        assert S1 == S2
        for row in rows:
            assert rs.member(f4, row, S1)


def test_sum_intersect_dimensions(f4, rng):
    n = 4
    for _ in range(25):
        A = _random_space(f4, n, 2, rng)
        B = _random_space(f4, n, 2, rng)
        S = rs.sum_spaces(f4, A, B)
        I = rs.intersect_spaces(f4, A, B)
        assert S.dim + I.dim == A.dim + B.dim
        assert rs.contains(f4, S, A) and rs.contains(f4, A, I)


def _random_space(field, n, d, rng):
    rows = [
        tuple(field.elem([rng.randrange(field.p) for _ in range(field.m)])
              for _ in range(n))
        for _ in range(d)
    ]
    return rs.subspace(field, n, rows)


def test_enumerate_subspaces_counts(f4):
    for n, d in [(2, 1), (3, 1), (3, 2), (4, 2)]:
        got = sum(1 for _ in rs.enumerate_subspaces(f4, n, d))
        assert got == rs.gaussian_binomial(n, d, 4)
    # all enumerated spaces are distinct and canonical
    seen = set()
    for S in rs.enumerate_subspaces(f4, 4, 2):
        assert S.rows not in seen
        seen.add(S.rows)


def test_enumerate_within(f4):
    outer = rs.subspace(
        f4, 4,
        [tuple(f4.one if j == i else f4.zero for j in range(4)) for i in (0, 2, 3)],
    )
    inner = list(rs.enumerate_subspaces_within(f4, outer, 2))
    assert len(inner) == rs.gaussian_binomial(3, 2, 4)
    for S in inner:
        assert rs.contains(f4, outer, S)


def _antidiag_pairing(field, n):
    gram = [
        [field.one if i + j == n - 1 else field.zero for j in range(n)]
        for i in range(n)
    ]
    return rs.ResiduePairing(field, gram)


def test_perp_basics(f4):
    n = 4
    pairing = _antidiag_pairing(f4, n)
    assert pairing.perp(rs.zero_subspace(n)) == rs.full_subspace(f4, n)
    assert pairing.perp(rs.full_subspace(f4, n)).dim == 0
    assert pairing.is_nondegenerate()


def test_perp_dimension_and_double_perp(f4, rng):
    n = 4
    pairing = _antidiag_pairing(f4, n)
    for _ in range(25):
        S = _random_space(f4, n, rng.randrange(4), rng)
        P = pairing.perp(S)
        assert P.dim == n - S.dim
        assert pairing.perp(P) == rs.frob_space(f4, S, 2)


def test_perp_inclusion_reversing(f4, rng):
    n = 4
    pairing = _antidiag_pairing(f4, n)
    for _ in range(20):
        A = _random_space(f4, n, 1, rng)
        B = rs.sum_spaces(f4, A, _random_space(f4, n, 1, rng))
        assert rs.contains(f4, pairing.perp(A), pairing.perp(B))


@pytest.mark.parametrize("p,expected", [(2, 3), (3, 4)])
def test_self_perp_lines(p, expected):
    # lines with L = L^perp for the twisted form on the plane: p + 1 of them
    ring = make_ring(RingParams(p, 2, 6))
    field = rs.ResidueField(ring)
    pairing = _antidiag_pairing(field, 2)
    count = sum(
        1
        for S in rs.enumerate_subspaces(field, 2, 1)
        if pairing.perp(S) == S
    )
    assert count == expected

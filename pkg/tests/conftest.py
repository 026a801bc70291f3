import random

import pytest

from wittlat import linalg as la
from wittlat import lattice as lt
from wittlat.coeff import RingParams, make_ring
from wittlat.hermitian import HermitianSpace


@pytest.fixture(scope="session")
def ring22():
    return make_ring(RingParams(2, 2, 6))


@pytest.fixture(scope="session")
def ring32():
    return make_ring(RingParams(3, 2, 6))


@pytest.fixture(scope="session")
def space2(ring22):
    return HermitianSpace(ring22, 2)


@pytest.fixture(scope="session")
def space3_p3(ring32):
    return HermitianSpace(ring32, 3)


@pytest.fixture(scope="session")
def space4(ring22):
    return HermitianSpace(ring22, 4)


def random_window(ring, n, rng):
    """Random lattice with p*std <= L <= p^(-1)*std."""
    W = ring.work
    cols = []
    for _ in range(n):
        elems = [W.elem([rng.randrange(ring.p ** 2) for _ in range(W.m)])
                 for _ in range(n)]
        cols.append(la.col_from_elems(elems))
    for c in la.identity_cols(W, n):
        cols.append(la.scale_col_p(W, c, 2))
    return lt.from_generators(ring, n, 1, tuple(cols))


def diag_lattice(ring, exps):
    """span{p^(e_i) y_i} for an exponent vector (negative entries allowed)."""
    W = ring.work
    n = len(exps)
    s = max(0, -min(exps))
    cols = []
    for i, e in enumerate(exps):
        elems = [W.mul_p(W.one, e + s) if j == i else W.zero for j in range(n)]
        cols.append(la.col_from_elems(elems))
    return lt.from_generators(ring, n, s, tuple(cols))


@pytest.fixture
def rng():
    return random.Random(20240817)

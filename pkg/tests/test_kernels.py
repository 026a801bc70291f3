import random

import pytest

from wittlat import kernels
from wittlat.kernels import pure


compiled = pytest.importorskip("wittlat.kernels._speedups")


def _red_for(P):
    # reduction table of x^2 + 1: x^2 = -1
    return ((P - 1), 0)


@pytest.mark.parametrize("P", [3 ** 18, 2 ** 18, 5 ** 6])
def test_twin_element_ops(P):
    rng = random.Random(0)
    red = _red_for(P)
    for _ in range(500):
        a = tuple(rng.randrange(P) for _ in range(2))
        b = tuple(rng.randrange(P) for _ in range(2))
        assert pure.el_mul(a, b, 2, red, P) == compiled.el_mul(a, b, 2, red, P)
        assert pure.el_add(a, b, P) == compiled.el_add(a, b, P)
        assert pure.el_sub(a, b, P) == compiled.el_sub(a, b, P)
        assert pure.el_neg(a, P) == compiled.el_neg(a, P)


def test_twin_vector_ops():
    rng = random.Random(1)
    P = 3 ** 18
    red = _red_for(P)
    for _ in range(100):
        u = tuple(rng.randrange(P) for _ in range(8))
        v = tuple(rng.randrange(P) for _ in range(8))
        c = tuple(rng.randrange(P) for _ in range(2))
        assert pure.vec_axpy(u, v, c, 2, red, P) == compiled.vec_axpy(u, v, c, 2, red, P)
        assert pure.vec_scale(v, c, 2, red, P) == compiled.vec_scale(v, c, 2, red, P)
        assert pure.vec_add(u, v, P) == compiled.vec_add(u, v, P)
        assert pure.vec_sub(u, v, P) == compiled.vec_sub(u, v, P)


def test_twin_higher_degree():
    # degree-4 modulus x^4 + x + 1 over Z/2^16
    P = 2 ** 16
    red_rows = []
    # x^4 = x + 1; x^5 = x^2 + x; x^6 = x^3 + x^2
    red_rows.append((1, 1, 0, 0))
    red_rows.append((0, 1, 1, 0))
    red_rows.append((0, 0, 1, 1))
    red = tuple(v for row in red_rows for v in row)
    rng = random.Random(2)
    for _ in range(300):
        a = tuple(rng.randrange(P) for _ in range(4))
        b = tuple(rng.randrange(P) for _ in range(4))
        assert pure.el_mul(a, b, 4, red, P) == compiled.el_mul(a, b, 4, red, P)


def test_backend_selection():
    assert kernels.backend_for(2 ** 18, 2).BACKEND == "compiled"
    # over the modulus limit the pure twin takes over
    assert kernels.backend_for(2 ** 40, 2).BACKEND == "pure"
    assert kernels.backend_for(100, 32).BACKEND == "pure"
    assert "pure" in kernels.available_backends()

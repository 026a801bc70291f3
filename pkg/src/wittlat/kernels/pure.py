"""Pure-Python arithmetic kernels.

Elements of W_N(F_{p^m}) are coefficient tuples of length m with entries in
[0, P) for P = p^N; vectors are flat tuples of k*m ints.  `red` is the
reduction table of the defining polynomial F: a flat tuple of (m-1)*m ints
whose i-th row gives the coefficients of x^(m+i) mod F.

The compiled twin in _speedups.pyx implements the same signatures; both must
stay behaviourally identical (tests/test_kernels.py enforces this).
"""

BACKEND = "pure"


def el_add(a, b, P):
    return tuple((x + y) % P for x, y in zip(a, b))


def el_sub(a, b, P):
    return tuple((x - y) % P for x, y in zip(a, b))


def el_neg(a, P):
    return tuple((-x) % P for x in a)


def el_mul(a, b, m, red, P):
    if m == 1:
        return ((a[0] * b[0]) % P,)
    # schoolbook product, then fold degrees m..2m-2 down via the table
    prod = [0] * (2 * m - 1)
    for i in range(m):
        ai = a[i]
        if ai == 0:
            continue
        for j in range(m):
            prod[i + j] = (prod[i + j] + ai * b[j]) % P
    out = prod[:m]
    for i in range(2 * m - 2, m - 1, -1):
        c = prod[i]
        if c == 0:
            continue
        row = (i - m) * m
        for j in range(m):
            out[j] = (out[j] + c * red[row + j]) % P
    return tuple(out)


def vec_add(u, v, P):
    return tuple((x + y) % P for x, y in zip(u, v))


def vec_sub(u, v, P):
    return tuple((x - y) % P for x, y in zip(u, v))


def vec_axpy(u, v, c, m, red, P):
    """u + c*v for flat vectors u, v and scalar c (length-m tuple)."""
    k = len(u) // m
    out = list(u)
    for t in range(k):
        base = t * m
        w = el_mul(c, v[base:base + m], m, red, P)
        for j in range(m):
            out[base + j] = (out[base + j] + w[j]) % P
    return tuple(out)


def vec_scale(v, c, m, red, P):
    k = len(v) // m
    out = []
    for t in range(k):
        base = t * m
        out.extend(el_mul(c, v[base:base + m], m, red, P))
    return tuple(out)

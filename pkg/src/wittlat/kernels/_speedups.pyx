# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of kernels/pure.py.

Same signatures, same semantics.  Callers guarantee P < 2**31 so every
intermediate product fits in a signed 64-bit integer (each product is reduced
mod P before accumulation).
"""

BACKEND = "compiled"

DEF MAXM = 16


def el_add(a, b, long long P):
    cdef Py_ssize_t i, m = len(a)
    return tuple(((<long long> a[i]) + (<long long> b[i])) % P for i in range(m))


def el_sub(a, b, long long P):
    cdef Py_ssize_t i, m = len(a)
    cdef long long x
    out = []
    for i in range(m):
        x = ((<long long> a[i]) - (<long long> b[i])) % P
        if x < 0:
            x += P
        out.append(x)
    return tuple(out)


def el_neg(a, long long P):
    cdef Py_ssize_t i, m = len(a)
    cdef long long x
    out = []
    for i in range(m):
        x = (-(<long long> a[i])) % P
        if x < 0:
            x += P
        out.append(x)
    return tuple(out)


cdef inline void _mul_into(long long *a, long long *b, Py_ssize_t m,
                           long long *red, long long P, long long *out) noexcept:
    cdef long long prod[2 * MAXM]
    cdef Py_ssize_t i, j
    cdef long long ai, c
    if m == 1:
        out[0] = (a[0] * b[0]) % P
        return
    for i in range(2 * m - 1):
        prod[i] = 0
    for i in range(m):
        ai = a[i]
        if ai == 0:
            continue
        for j in range(m):
            prod[i + j] = (prod[i + j] + ai * b[j]) % P
    for i in range(2 * m - 2, m - 1, -1):
        c = prod[i]
        if c == 0:
            continue
        for j in range(m):
            prod[j] = (prod[j] + c * red[(i - m) * m + j]) % P
    for j in range(m):
        out[j] = prod[j]


cdef inline void _load(object seq, long long *dst, Py_ssize_t k) except *:
    cdef Py_ssize_t i
    for i in range(k):
        dst[i] = <long long> seq[i]


def el_mul(a, b, Py_ssize_t m, red, long long P):
    cdef long long ca[MAXM]
    cdef long long cb[MAXM]
    cdef long long cred[MAXM * MAXM]
    cdef long long cout[MAXM]
    cdef Py_ssize_t j
    _load(a, ca, m)
    _load(b, cb, m)
    if m > 1:
        _load(red, cred, (m - 1) * m)
    _mul_into(ca, cb, m, cred, P, cout)
    return tuple(cout[j] for j in range(m))


def vec_add(u, v, long long P):
    cdef Py_ssize_t i, k = len(u)
    return tuple(((<long long> u[i]) + (<long long> v[i])) % P for i in range(k))


def vec_sub(u, v, long long P):
    cdef Py_ssize_t i, k = len(u)
    cdef long long x
    out = []
    for i in range(k):
        x = ((<long long> u[i]) - (<long long> v[i])) % P
        if x < 0:
            x += P
        out.append(x)
    return tuple(out)


def vec_axpy(u, v, c, Py_ssize_t m, red, long long P):
    cdef Py_ssize_t k = len(u) // m
    cdef Py_ssize_t t, j
    cdef long long cc[MAXM]
    cdef long long cred[MAXM * MAXM]
    cdef long long cv[MAXM]
    cdef long long cw[MAXM]
    _load(c, cc, m)
    if m > 1:
        _load(red, cred, (m - 1) * m)
    out = []
    for t in range(k):
        for j in range(m):
            cv[j] = <long long> v[t * m + j]
        _mul_into(cc, cv, m, cred, P, cw)
        for j in range(m):
            out.append(((<long long> u[t * m + j]) + cw[j]) % P)
    return tuple(out)


def vec_scale(v, c, Py_ssize_t m, red, long long P):
    cdef Py_ssize_t k = len(v) // m
    cdef Py_ssize_t t, j
    cdef long long cc[MAXM]
    cdef long long cred[MAXM * MAXM]
    cdef long long cv[MAXM]
    cdef long long cw[MAXM]
    _load(c, cc, m)
    if m > 1:
        _load(red, cred, (m - 1) * m)
    out = []
    for t in range(k):
        for j in range(m):
            cv[j] = <long long> v[t * m + j]
        _mul_into(cc, cv, m, cred, P, cw)
        for j in range(m):
            out.append(cw[j])
    return tuple(out)

"""Exact linear algebra over the truncated Witt ring.

Matrices are tuples of columns; a column is a flat tuple of n*m ints (n ring
elements of m coordinates each).  Everything here runs on a ring's work ring
(extra headroom digits), so the divisions performed by the normal forms stay
exact for lattice data whose pivots respect the guard bound.

The canonical column form is the Hermite/Howell form specialised to full-rank
modules over a chain ring: lower triangular, pivot of column j at row j equal
to p^(a_j) exactly, and every below-pivot entry in row i reduced to its
canonical representative mod p^(a_i).  Two full-rank submodules are equal iff
their canonical forms are identical.
"""

from .errors import PrecisionError


def entry(col, i, m):
    return col[i * m:(i + 1) * m]


def col_from_elems(elems):
    return tuple(v for e in elems for v in e)


def zero_col(ring, n):
    return (0,) * (n * ring.m)


def identity_cols(ring, n):
    cols = []
    for j in range(n):
        elems = [ring.one if i == j else ring.zero for i in range(n)]
        cols.append(col_from_elems(elems))
    return tuple(cols)


def scale_col_p(ring, col, v):
    pv = ring.p ** v
    return tuple((c * pv) % ring.modulus for c in col)


def col_is_zero(col):
    return all(c == 0 for c in col)


def div_col_p(ring, col, v):
    """Exact division of a column by p^v; None if any coordinate resists."""
    if v == 0:
        return col
    pv = ring.p ** v
    out = []
    for c in col:
        if c % pv:
            return None
        out.append(c // pv)
    return tuple(out)


def col_entry_val(ring, col, i):
    return ring.valuation(entry(col, i, ring.m))


def col_min_val(ring, col):
    v = ring.N
    p = ring.p
    for c in col:
        if c == 0:
            continue
        w = 0
        while c % p == 0:
            c //= p
            w += 1
        if w < v:
            v = w
            if v == 0:
                break
    return v


def _axpy(ring, dst, src, coef):
    """dst + coef * src for flat columns."""
    return ring._kern.vec_axpy(dst, src, coef, ring.m, ring.red, ring.modulus)


def _scale(ring, col, coef):
    return ring._kern.vec_scale(col, coef, ring.m, ring.red, ring.modulus)


def hnf(ring, cols, n):
    """Canonical column form of the module spanned by cols inside R^n.

    Returns (pivot_vals, canonical_cols).  Requires full rank n within the
    ring's precision; raises PrecisionError otherwise.
    """
    m = ring.m
    work = [list(c) for c in cols]
    ncols = len(work)
    if ncols < n:
        raise PrecisionError("matrix has fewer columns than required rank")
    for r in range(n):
        best, bestval = None, ring.N
        for j in range(r, ncols):
            v = ring.valuation(entry(work[j], r, m))
            if v < bestval:
                best, bestval = j, v
                if v == 0:
                    break
        if best is None:
            raise PrecisionError(
                f"no pivot in row {r}: matrix not of full rank within precision"
            )
        work[r], work[best] = work[best], work[r]
        piv = entry(work[r], r, m)
        unit = ring.div_p(piv, bestval)
        if not ring.is_unit(unit):
            raise PrecisionError("pivot lost unit part")  # unreachable by choice of pivot
        inv_u = ring.invert(unit)
        work[r] = list(_scale(ring, tuple(work[r]), inv_u))
        for j in range(r + 1, ncols):
            e = entry(work[j], r, m)
            q = ring.div_p(e, bestval)
            if not ring.is_zero(q):
                work[j] = list(_axpy(ring, tuple(work[j]), tuple(work[r]), ring.neg(q)))
    pivot_vals = [col_entry_val(ring, tuple(work[r]), r) for r in range(n)]
    # canonical reduction of below-pivot entries: entry (i, j), i > j, is
    # replaced by its representative with coordinates in [0, p^(a_i))
    for j in range(n):
        for i in range(j + 1, n):
            ai = pivot_vals[i]
            e = entry(tuple(work[j]), i, m)
            rep = ring.reduce_mod(e, ai)
            diff = ring.sub(e, rep)
            q = ring.div_p(diff, ai)
            if q is None:
                raise PrecisionError("canonical reduction failed")
            if not ring.is_zero(q):
                work[j] = list(_axpy(ring, tuple(work[j]), tuple(work[i]), ring.neg(q)))
    return tuple(pivot_vals), tuple(tuple(c) for c in work[:n])


def solve_hnf(ring, cols, pivot_vals, target):
    """Coordinates of target in the canonical basis, or None if not in span."""
    m = ring.m
    n = len(cols)
    res = target
    coords = []
    for i in range(n):
        e = entry(res, i, m)
        q = ring.div_p(e, pivot_vals[i])
        if q is None:
            return None
        coords.append(q)
        if not ring.is_zero(q):
            res = _axpy(ring, res, cols[i], ring.neg(q))
    if not col_is_zero(res):
        return None
    return coords


def member_hnf(ring, cols, pivot_vals, target):
    return solve_hnf(ring, cols, pivot_vals, target) is not None


# ---------------------------------------------------------------------------
# Smith normal form (dense grids of ring elements)


def grid_from_cols(ring, cols, n):
    m = ring.m
    return [[entry(c, i, m) for c in cols] for i in range(n)]


def cols_from_grid(ring, grid):
    if not grid:
        return ()
    nrows, ncols = len(grid), len(grid[0])
    return tuple(
        col_from_elems([grid[i][j] for i in range(nrows)]) for j in range(ncols)
    )


def snf(ring, grid, transforms=False):
    """Diagonalise the grid: returns (divisor_vals, left, left_inv, right).

    With transforms=True, maintains M * right = left * D for unimodular
    square matrices left (nrows x nrows) and right (ncols x ncols); left_inv
    tracks the inverse of left directly (no inversion is ever performed).
    Divisor valuations come out nondecreasing; rows and columns that never
    produce a pivot contribute no divisor.
    """
    D = [row[:] for row in grid]
    nrows = len(D)
    ncols = len(D[0]) if nrows else 0
    left = [[ring.one if i == j else ring.zero for j in range(nrows)]
            for i in range(nrows)] if transforms else None
    left_inv = [[ring.one if i == j else ring.zero for j in range(nrows)]
                for i in range(nrows)] if transforms else None
    right = [[ring.one if i == j else ring.zero for j in range(ncols)]
             for i in range(ncols)] if transforms else None
    divisors = []
    t = 0
    while t < min(nrows, ncols):
        bi = bj = None
        bestval = ring.N
        for i in range(t, nrows):
            for j in range(t, ncols):
                v = ring.valuation(D[i][j])
                if v < bestval:
                    bi, bj, bestval = i, j, v
                    if v == 0:
                        break
            if bestval == 0:
                break
        if bi is None:
            break  # remaining block vanishes at this precision
        d = bestval
        _row_swap(D, left, left_inv, t, bi)
        _col_swap(D, right, t, bj)
        unit = ring.div_p(D[t][t], d)
        inv_u = ring.invert(unit)
        _row_scale(ring, D, left, left_inv, t, inv_u)
        for i in range(t + 1, nrows):
            q = ring.div_p(D[i][t], d)
            if not ring.is_zero(q):
                _row_addmul(ring, D, left, left_inv, i, t, ring.neg(q))
        for j in range(t + 1, ncols):
            q = ring.div_p(D[t][j], d)
            if not ring.is_zero(q):
                _col_addmul(ring, D, right, j, t, ring.neg(q))
        divisors.append(d)
        t += 1
    return divisors, left, left_inv, right


def _row_swap(D, left, left_inv, i, j):
    if i == j:
        return
    D[i], D[j] = D[j], D[i]
    if left is not None:
        for r in range(len(left)):
            left[r][i], left[r][j] = left[r][j], left[r][i]
        left_inv[i], left_inv[j] = left_inv[j], left_inv[i]


def _col_swap(D, right, i, j):
    if i == j:
        return
    for r in range(len(D)):
        D[r][i], D[r][j] = D[r][j], D[r][i]
    if right is not None:
        for r in range(len(right)):
            right[r][i], right[r][j] = right[r][j], right[r][i]


def _row_scale(ring, D, left, left_inv, i, u):
    D[i] = [ring.mul(u, c) for c in D[i]]
    if left is not None:
        inv = ring.invert(u)
        for r in range(len(left)):
            left[r][i] = ring.mul(left[r][i], inv)
        left_inv[i] = [ring.mul(u, c) for c in left_inv[i]]


def _row_addmul(ring, D, left, left_inv, i, j, c):
    """row_i += c * row_j; compensates left so M*right = left*D persists."""
    D[i] = [ring.add(a, ring.mul(c, b)) for a, b in zip(D[i], D[j])]
    if left is not None:
        # E = I + c e_ij acts on the left of D, so left picks up E^{-1}:
        # column j of left loses c * column i; left_inv applies E directly
        for r in range(len(left)):
            left[r][j] = ring.sub(left[r][j], ring.mul(c, left[r][i]))
        left_inv[i] = [ring.add(a, ring.mul(c, b))
                       for a, b in zip(left_inv[i], left_inv[j])]


def _col_addmul(ring, D, right, j, i, c):
    """col_j += c * col_i, mirrored onto right."""
    for r in range(len(D)):
        D[r][j] = ring.add(D[r][j], ring.mul(c, D[r][i]))
    if right is not None:
        for r in range(len(right)):
            right[r][j] = ring.add(right[r][j], ring.mul(c, right[r][i]))


def kernel_mod(ring, grid, c):
    """Basis of {x in R^ncols : grid * x = 0 mod p^c} as flat columns.

    Always contains p^c R^ncols, so the returned generators together with
    that tail span the solution module exactly.
    """
    nrows = len(grid)
    ncols = len(grid[0]) if nrows else 0
    divisors, _, _, right = snf(ring, grid, transforms=True)
    rank = len(divisors)
    gens = []
    for idx in range(ncols):
        d = divisors[idx] if idx < rank else ring.N
        e = max(c - d, 0)
        col = col_from_elems([ring.mul_p(right[r][idx], e) if e else right[r][idx]
                              for r in range(ncols)])
        gens.append(col)
    # p^c times the standard basis keeps the span honest even when the
    # transform's高 digits are not pinned down
    for j in range(ncols):
        elems = [ring.mul_p(ring.one, c) if i == j else ring.zero for i in range(ncols)]
        gens.append(col_from_elems(elems))
    return gens


def matmul_cols(ring, cols, coeff_cols, n):
    """Columns of M * C where M has the given columns (inside R^n)."""
    m = ring.m
    out = []
    for cc in coeff_cols:
        acc = zero_col(ring, n)
        for j, col in enumerate(cols):
            cj = entry(cc, j, m)
            if not ring.is_zero(cj):
                acc = _axpy(ring, acc, col, cj)
        out.append(acc)
    return tuple(out)


def transpose_grid(grid):
    if not grid:
        return []
    return [[grid[i][j] for i in range(len(grid))] for j in range(len(grid[0]))]


def map_entries(ring, cols, fn):
    m = ring.m
    out = []
    for col in cols:
        elems = [fn(entry(col, i, m)) for i in range(len(col) // m)]
        out.append(col_from_elems(elems))
    return tuple(out)

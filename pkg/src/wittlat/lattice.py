"""Full-rank lattices over R with canonical normal forms.

A Lattice is p^(-shift) times the column span of an integral matrix in
canonical column echelon form (see linalg.hnf), with the shift minimised so
that the matrix has a valuation-0 entry.  Canonical forms make set equality
a representation equality, which the enumerators rely on for dedup.

Every constructor funnels through `from_generators`, which computes the
canonical form on the ring's work ring and enforces the guard bound: the
determinant (sum of pivot valuations) of the normalised matrix must stay
below N - GUARD, otherwise a PrecisionError is raised rather than risking
an uncertified equality.
"""

from dataclasses import dataclass

from . import linalg as la
from . import residue as rs
from .errors import PrecisionError, WittlatError

GUARD = 2


@dataclass(frozen=True)
class Lattice:
    n: int
    shift: int
    pivot_vals: tuple
    cols: tuple  # canonical columns, flat int tuples

    def serialize(self):
        m = len(self.cols[0]) // self.n
        rows = []
        for i in range(self.n):
            row = []
            for col in self.cols:
                row.append(list(la.entry(col, i, m)))
            rows.append(row)
        return {"shift": self.shift, "basis": rows}

    def sort_key(self):
        return (self.shift, self.cols)


def from_generators(ring, n, shift, gen_cols):
    """Canonicalise p^(-shift) * span(gen_cols); generators are flat columns."""
    W = ring.work
    pivot_vals, cols = la.hnf(W, gen_cols, n)
    v = min(la.col_min_val(W, c) for c in cols)
    if v > 0:
        cols = tuple(la.div_col_p(W, c, v) for c in cols)
        pivot_vals = tuple(pv - v for pv in pivot_vals)
        shift -= v
    else:
        pivot_vals = tuple(pivot_vals)
    if max(pivot_vals) >= ring.N - GUARD:
        raise PrecisionError(
            f"a basis pivot valuation {max(pivot_vals)} reaches the "
            f"guard band (N = {ring.N}, guard = {GUARD})"
        )
    cols = tuple(tuple(c % ring.modulus for c in col) for col in cols)
    return Lattice(n, shift, pivot_vals, cols)


def standard(ring, n):
    """The standard lattice R^n (the reference lattice of the window)."""
    return from_generators(ring, n, 0, la.identity_cols(ring.work, n))


def scale(ring, L, k):
    """p^k * L."""
    return Lattice(L.n, L.shift - k, L.pivot_vals, L.cols)


def contains(ring, outer, inner):
    """inner subseteq outer, decided by membership of canonical generators.

    With inner = p^(-e1) S1 and outer = p^(-e2) S2, containment means
    p^(e2-e1) S1 lies in S2; a negative scaling power turns into a valuation
    condition on the solved coordinates.
    """
    W = ring.work
    delta = outer.shift - inner.shift
    for col in inner.cols:
        target = la.scale_col_p(W, col, delta) if delta > 0 else col
        sol = la.solve_hnf(W, outer.cols, outer.pivot_vals, target)
        if sol is None:
            return False
        if delta < 0 and any(W.valuation(c) < -delta for c in sol):
            return False
    return True


def lattice_sum(ring, L1, L2):
    s = max(L1.shift, L2.shift)
    c1 = [la.scale_col_p(ring.work, c, s - L1.shift) for c in L1.cols]
    c2 = [la.scale_col_p(ring.work, c, s - L2.shift) for c in L2.cols]
    return from_generators(ring, L1.n, s, tuple(c1) + tuple(c2))


def intersect(ring, L1, L2):
    """Largest common sublattice, via the congruence-kernel method.

    Solutions of A u = B v mod p^c recover the intersection exactly as long
    as p^c R^n lies inside both lattices, which holds with a wide margin at
    the work precision.
    """
    W = ring.work
    s = max(L1.shift, L2.shift)
    A = [la.scale_col_p(W, c, s - L1.shift) for c in L1.cols]
    B = [la.scale_col_p(W, c, s - L2.shift) for c in L2.cols]
    n = L1.n
    grid = []
    for i in range(n):
        row = [la.entry(c, i, W.m) for c in A]
        row += [W.neg(la.entry(c, i, W.m)) for c in B]
        grid.append(row)
    c = W.N - GUARD
    gens = la.kernel_mod(W, grid, c)
    # map kernel coordinates (u, v) to vectors A*u
    vec_gens = []
    for g in gens:
        acc = la.zero_col(W, n)
        for j in range(n):
            cj = la.entry(g, j, W.m)
            if not W.is_zero(cj):
                acc = la._axpy(W, acc, A[j], cj)
        vec_gens.append(acc)
    # the kernel tail p^c R^(2n) maps into p^c * L1; keep the span honest
    for col in la.identity_cols(W, n):
        vec_gens.append(la.scale_col_p(W, col, c))
    return from_generators(ring, n, s, tuple(vec_gens))


def rel_position(ring, L1, L2):
    """Relative position invariant: the nonincreasing integer n-tuple
    (a_1, ..., a_n) such that L2 has a basis x_i with p^(a_i) x_i a basis
    of L1.  Computed from the Smith normal form of L1's basis written in
    L2's basis."""
    W = ring.work
    n = L1.n
    # minimal w >= 0 with p^w * (integral L1) inside (integral L2)
    w = 0
    while w < ring.N - GUARD:
        ok = all(
            la.member_hnf(W, L2.cols, L2.pivot_vals, la.scale_col_p(W, c, w))
            for c in L1.cols
        )
        if ok:
            break
        w += 1
    else:
        raise PrecisionError("relative position exceeds the precision window")
    coords = []
    for c in L1.cols:
        sol = la.solve_hnf(W, L2.cols, L2.pivot_vals, la.scale_col_p(W, c, w))
        if sol is None:
            raise PrecisionError("containment lost during coordinate solve")
        coords.append(la.col_from_elems(sol))
    grid = la.grid_from_cols(W, tuple(coords), n)
    divisors, _, _, _ = la.snf(W, grid)
    if len(divisors) != n:
        raise PrecisionError("relative position matrix lost rank at this precision")
    shift_adjust = -w + L2.shift - L1.shift
    comps = sorted((d + shift_adjust for d in divisors), reverse=True)
    if max(abs(c) for c in comps) >= ring.N - GUARD:
        raise PrecisionError("an elementary divisor reached the guard band")
    return tuple(comps)


def colength(ring, L1, L2):
    """Length of L2/L1 over R; L1 must be contained in L2."""
    comps = rel_position(ring, L1, L2)
    if any(c < 0 for c in comps):
        raise WittlatError("colength undefined: first lattice is not contained in the second")
    return sum(comps)


def image_mod_p(ring, field, X, L):
    """The subspace X/pL inside L/pL, for lattices with pL <= X <= L.

    Coordinates are taken with respect to L's canonical basis; the result is
    an echelonised Subspace over the residue field.
    """
    W = ring.work
    delta = L.shift - X.shift
    rows = []
    for c in X.cols:
        target = la.scale_col_p(W, c, delta) if delta >= 0 else None
        if target is None:
            raise WittlatError("image_mod_p: X does not sit inside L")
        sol = la.solve_hnf(W, L.cols, L.pivot_vals, target)
        if sol is None:
            raise WittlatError("image_mod_p: X does not sit inside L")
        rows.append(tuple(W.residue(e) for e in sol))
    return rs.subspace(field, L.n, rows)


def preimage_of_subspace(ring, field, space, L):
    """The lattice Y with pL <= Y <= L reducing to the given subspace of L/pL."""
    W = ring.work
    n = L.n
    gens = []
    for row in space.rows:
        elems = [W.elem([int(c) for c in coeff]) for coeff in row]
        acc = la.zero_col(W, n)
        for j in range(n):
            if not W.is_zero(elems[j]):
                acc = la._axpy(W, acc, L.cols[j], elems[j])
        gens.append(acc)
    for col in L.cols:
        gens.append(la.scale_col_p(W, col, 1))
    return from_generators(ring, n, L.shift, tuple(gens))

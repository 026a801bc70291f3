"""Residue-field linear algebra: F_q arithmetic, echelon subspaces, pairings.

The residue field of a ring context is F_q = F_p[x]/(F mod p) with q = p^m.
Subspaces of F_q^n are stored by their reduced row echelon basis, which is
unique, so equality of subspaces is equality of representations.

Pairings here are linear in the first slot and sigma-semilinear in the
second (sigma = p-power Frobenius); `perp` is the left annihilator.
"""

from dataclasses import dataclass
from itertools import combinations, product

from . import kernels
from .errors import UsageError


class ResidueField:
    """F_{p^m} presented through the residue of a CoeffRing."""

    def __init__(self, ring):
        self.ring = ring
        self.p = ring.p
        self.m = ring.m
        self.q = ring.p ** ring.m
        self.red = tuple(c % ring.p for c in ring.red)
        self._kern = kernels.backend_for(self.p, self.m)
        self.zero = (0,) * self.m
        self.one = tuple(1 if i == 0 else 0 for i in range(self.m))

    def elem(self, coeffs):
        return tuple(int(c) % self.p for c in coeffs)

    def add(self, a, b):
        return self._kern.el_add(a, b, self.p)

    def sub(self, a, b):
        return self._kern.el_sub(a, b, self.p)

    def neg(self, a):
        return self._kern.el_neg(a, self.p)

    def mul(self, a, b):
        return self._kern.el_mul(a, b, self.m, self.red, self.p)

    def inv(self, a):
        if all(c == 0 for c in a):
            raise ZeroDivisionError("inverse of 0 in residue field")
        return self.pow_(a, self.q - 2)

    def pow_(self, a, e):
        if not any(a):
            return self.one if e == 0 else self.zero
        e %= self.q - 1
        result = self.one
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def frob(self, a, power=1):
        out = a
        for _ in range(power % self.m):
            out = self.pow_(out, self.p)
        return out

    def all_elements(self):
        """All q elements, in lexicographic coefficient order."""
        return [tuple(reversed(t)) for t in product(range(self.p), repeat=self.m)]

    def subfield_elements(self, d):
        """Elements of the subfield F_{p^d} (requires d | m)."""
        if self.m % d:
            raise UsageError(f"F_(p^{d}) is not a subfield of F_(p^{self.m})")
        pd = self.p ** d
        return [a for a in self.all_elements() if self.pow_(a, pd) == a]


# ---------------------------------------------------------------------------
# row echelon machinery; a "row" is a tuple of n field elements


def rref(field, rows):
    """Reduced row echelon form; returns (canonical rows, pivot columns)."""
    rows = [list(r) for r in rows]
    if not rows:
        return (), ()
    n = len(rows[0])
    pivots = []
    r = 0
    for col in range(n):
        pivot_row = None
        for i in range(r, len(rows)):
            if any(rows[i][col]):
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = field.inv(rows[r][col])
        rows[r] = [field.mul(inv, c) for c in rows[r]]
        for i in range(len(rows)):
            if i != r and any(rows[i][col]):
                c = rows[i][col]
                rows[i] = [field.sub(x, field.mul(c, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    rows = [tuple(row) for row in rows[:r]]
    return tuple(rows), tuple(pivots)


@dataclass(frozen=True)
class Subspace:
    """Subspace of F_q^n with unique echelon basis."""

    n: int
    rows: tuple  # RREF rows, each a tuple of n field elements

    @property
    def dim(self):
        return len(self.rows)

    def serialize(self):
        return [[list(c) for c in row] for row in self.rows]


def subspace(field, n, rows):
    canon, _ = rref(field, rows)
    return Subspace(n, canon)


def zero_subspace(n):
    return Subspace(n, ())


def full_subspace(field, n):
    rows = []
    for i in range(n):
        rows.append(tuple(field.one if j == i else field.zero for j in range(n)))
    return Subspace(n, tuple(rows))


def member(field, v, space):
    """Is the vector v in the subspace?  (Reduce against the echelon rows.)"""
    v = list(v)
    for row in space.rows:
        col = next(i for i, c in enumerate(row) if any(c))
        if any(v[col]):
            c = v[col]
            v = [field.sub(x, field.mul(c, y)) for x, y in zip(v, row)]
    return all(not any(c) for c in v)


def contains(field, outer, inner):
    return all(member(field, row, outer) for row in inner.rows)


def sum_spaces(field, a, b):
    return subspace(field, a.n, list(a.rows) + list(b.rows))


def nullspace(field, rows, n):
    """Right nullspace {x : sum_j rows[i][j] x_j = 0} as a Subspace of F_q^n."""
    canon, pivots = rref(field, rows)
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        v = [field.zero] * n
        v[f] = field.one
        for i, pcol in enumerate(pivots):
            v[pcol] = field.neg(canon[i][f])
        basis.append(tuple(v))
    return subspace(field, n, basis)


def intersect_spaces(field, a, b):
    """Intersection via x in a <=> x orthogonal to nullspace-dual; use the
    kernel of the combined coordinate maps instead: solve for coefficients."""
    # x in A cap B <=> x = u*A_rows = v*B_rows; kernel of stacked transpose
    if a.dim == 0 or b.dim == 0:
        return zero_subspace(a.n)
    rows_a = list(a.rows)
    rows_b = list(b.rows)
    # columns index: coefficients (u, v); equations: per ambient coordinate
    eqs = []
    for j in range(a.n):
        eq = [rows_a[i][j] for i in range(len(rows_a))]
        eq += [field.neg(rows_b[i][j]) for i in range(len(rows_b))]
        eqs.append(tuple(eq))
    sol = nullspace(field, eqs, len(rows_a) + len(rows_b))
    vecs = []
    for srow in sol.rows:
        v = [field.zero] * a.n
        for i in range(len(rows_a)):
            if any(srow[i]):
                v = [field.add(x, field.mul(srow[i], y)) for x, y in zip(v, rows_a[i])]
        vecs.append(tuple(v))
    return subspace(field, a.n, vecs)


def frob_space(field, space, power=1):
    rows = [tuple(field.frob(c, power) for c in row) for row in space.rows]
    return subspace(field, space.n, rows)


def gaussian_binomial(n, d, q):
    if d < 0 or d > n:
        return 0
    num = den = 1
    for i in range(d):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def enumerate_subspaces(field, n, d, elements=None):
    """All dim-d subspaces of F_q^n by echelon pattern, deterministic order.

    With `elements` restricted to a subfield list, produces exactly the
    subspaces rational over that subfield (the echelon basis of a
    Galois-stable subspace has entries in the fixed field).
    """
    if d == 0:
        yield zero_subspace(n)
        return
    if elements is None:
        elements = field.all_elements()
    for pivots in combinations(range(n), d):
        free_slots = []
        for i, pc in enumerate(pivots):
            for j in range(pc + 1, n):
                if j not in pivots:
                    free_slots.append((i, j))
        for values in product(elements, repeat=len(free_slots)):
            rows = []
            for i, pc in enumerate(pivots):
                row = [field.zero] * n
                row[pc] = field.one
                rows.append(row)
            for (i, j), val in zip(free_slots, values):
                rows[i][j] = val
            yield Subspace(n, tuple(tuple(r) for r in rows))


def enumerate_subspaces_within(field, space, d):
    """All dim-d subspaces of the given subspace."""
    k = space.dim
    for coeffs in enumerate_subspaces(field, k, d):
        rows = []
        for crow in coeffs.rows:
            v = [field.zero] * space.n
            for i in range(k):
                if any(crow[i]):
                    v = [field.add(x, field.mul(crow[i], y))
                         for x, y in zip(v, space.rows[i])]
            rows.append(tuple(v))
        yield subspace(field, space.n, rows)


# ---------------------------------------------------------------------------
# sigma-semilinear pairings


class ResiduePairing:
    """Pairing <x, y> = sum_ij x_i G[i][j] sigma(y_j) on F_q^n."""

    def __init__(self, field, gram):
        self.field = field
        self.n = len(gram)
        self.gram = tuple(tuple(row) for row in gram)

    def value(self, x, y):
        f = self.field
        acc = f.zero
        for j in range(self.n):
            if not any(y[j]):
                continue
            sy = f.frob(y[j])
            for i in range(self.n):
                if any(x[i]) and any(self.gram[i][j]):
                    acc = f.add(acc, f.mul(f.mul(x[i], self.gram[i][j]), sy))
        return acc

    def perp(self, space):
        """Left annihilator {x : <x, s> = 0 for all s in the subspace}."""
        f = self.field
        if space.dim == 0:
            return full_subspace(f, self.n)
        eqs = []
        for srow in space.rows:
            w = []
            for i in range(self.n):
                acc = f.zero
                for j in range(self.n):
                    if any(self.gram[i][j]) and any(srow[j]):
                        acc = f.add(acc, f.mul(self.gram[i][j], f.frob(srow[j])))
                w.append(acc)
            eqs.append(tuple(w))
        # equations indexed by s; unknowns x_i:  sum_i x_i w[i] = 0
        return nullspace(f, eqs, self.n)

    def is_isotropic(self, space):
        for r1 in space.rows:
            for r2 in space.rows:
                if any(self.value(r1, r2)):
                    return False
        return True

    def is_nondegenerate(self):
        return self.perp(full_subspace(self.field, self.n)).dim == 0

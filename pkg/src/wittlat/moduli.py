"""Point sets of the lattice model: RZ solutions, strata, Y pairs, DL flags,
fiber data with its semilinear form, isotropic complements, hearts.

All enumerators are exhaustive over lattices/flags with coefficients in the
ring context they are handed (use a context of residue degree m*j for the
degree-j field), emit canonically sorted duplicate-free lists, and self-check
the defining conditions of everything they emit.  Conditions guaranteed by
the theory are asserted through ConsistencyError: a failure is an arithmetic
bug, never bad user input, and carries a replayable counterexample.
"""

from dataclasses import dataclass
from itertools import product as iproduct

from . import lattice as lt
from . import linalg as la
from . import residue as rs
from .errors import CeilingExceeded, ConsistencyError, UsageError

DEFAULT_CEILING = 10_000_000


# ---------------------------------------------------------------------------
# invariant vectors


def stratum_invariant(n, k):
    """(1^(k-1), 0^(n-2k+1), (-1)^k): the invariant cutting out stratum k."""
    return tuple([1] * (k - 1) + [0] * (n - 2 * k + 1) + [-1] * k)


def dual_stratum_invariant(n, k):
    """The companion invariant on the conjugate component: minus-reverse."""
    return tuple(-a for a in reversed(stratum_invariant(n, k)))


def minuscule_invariant(n):
    """(1, 1, 0^(n-2)): the defining relative position of dual against lattice."""
    return tuple([1, 1] + [0] * (n - 2))


# ---------------------------------------------------------------------------
# point containers


@dataclass(frozen=True)
class RZPoint:
    L0: lt.Lattice

    def serialize(self):
        return {"L0": self.L0.serialize()}

    def sort_key(self):
        return self.L0.sort_key()


@dataclass(frozen=True)
class YPoint:
    M0: lt.Lattice
    N0: lt.Lattice

    def serialize(self):
        return {"M0": self.M0.serialize(), "N0": self.N0.serialize()}

    def sort_key(self):
        return (self.M0.sort_key(), self.N0.sort_key())


@dataclass(frozen=True)
class TriplePoint:
    L0: lt.Lattice
    M0: lt.Lattice
    N0: lt.Lattice

    def serialize(self):
        return {
            "L0": self.L0.serialize(),
            "M0": self.M0.serialize(),
            "N0": self.N0.serialize(),
        }

    def sort_key(self):
        return (self.L0.sort_key(), self.M0.sort_key(), self.N0.sort_key())


@dataclass(frozen=True)
class DLPoint:
    """Flag 0 < J < Kperp < K < Jperp < F^n with the perp constraints."""

    J: rs.Subspace
    Kperp: rs.Subspace
    K: rs.Subspace
    Jperp: rs.Subspace

    def serialize(self):
        return {
            "J": self.J.serialize(),
            "Kperp": self.Kperp.serialize(),
            "K": self.K.serialize(),
            "Jperp": self.Jperp.serialize(),
        }

    def sort_key(self):
        return (self.J.rows, self.K.rows)


@dataclass(frozen=True)
class DLHeartPoint:
    """Flag 0 < F < Fperp < heart residue space under the rescaled pairing."""

    F: rs.Subspace
    Fperp: rs.Subspace

    def serialize(self):
        return {"F": self.F.serialize(), "Fperp": self.Fperp.serialize()}

    def sort_key(self):
        return self.F.rows


@dataclass(frozen=True)
class HeartLattice:
    """Scalar-self-dual intermediate lattice (0-component) with its isotropic
    reduction."""

    lam0: lt.Lattice
    iso: rs.Subspace

    def serialize(self):
        return {"lam0": self.lam0.serialize(), "iso": self.iso.serialize()}

    def sort_key(self):
        return self.lam0.sort_key()


@dataclass(frozen=True)
class FiberData:
    """The rank-(2k-1) fiber space with its filtration and semilinear form.

    reps are integral columns whose p^(-rep_shift)-rescalings represent a
    basis of the quotient; V1 and Vk are subspaces of F_q^(2k-1) in these
    coordinates; beta is the pairing tabulated on the representatives.
    mstar and linv_rows retain the Smith frame so that further vectors can
    be expressed in quotient coordinates.
    """

    k: int
    reps: tuple
    rep_shift: int
    V1: rs.Subspace
    Vk: rs.Subspace
    beta: rs.ResiduePairing
    mstar: lt.Lattice
    linv_rows: tuple

    @property
    def dim(self):
        return 2 * self.k - 1


@dataclass(frozen=True)
class StratumLabel:
    k: int
    flavor: str  # "interior" | "heart"
    cochar0: tuple
    cochar1: tuple
    heart: HeartLattice | None = None

    def serialize(self):
        out = {
            "k": self.k,
            "flavor": self.flavor,
            "cochar0": list(self.cochar0),
            "cochar1": list(self.cochar1),
        }
        if self.heart is not None:
            out["heart"] = self.heart.serialize()
        return out


# ---------------------------------------------------------------------------
# membership and constructors


def is_rz_point(space, L0):
    """Window containment plus inv(L0*, L0) = (1, 1, 0, ..., 0)."""
    if not space.in_window(L0):
        return False
    Ls = space.dual(L0)
    return lt.rel_position(space.ring, Ls, L0) == minuscule_invariant(space.n)


def xmu_membership(space, L0):
    """Membership in the affine Deligne-Lusztig set X_mu(b), through the
    lattice dictionary: the window normalisation plus the explicit minuscule
    condition inv(L0*, L0) = (1, 1, 0, ..., 0)."""
    return is_rz_point(space, L0)


def stratum_of(space, L0):
    """The unique k with inv(L0, standard) = (1^(k-1), 0, ..., (-1)^k)."""
    memo = getattr(space, "_stratum_memo", None)
    if memo is None:
        memo = space._stratum_memo = {}
    if L0 in memo:
        return memo[L0]
    ring = space.ring
    n = space.n
    a = lt.rel_position(ring, L0, space.standard)
    for k in range(1, n // 2 + 1):
        if a == stratum_invariant(n, k):
            memo[L0] = k
            return k
    raise ConsistencyError(
        f"invariant {a} matches no stratum: arithmetic bug",
        counterexample={"L0": L0.serialize(), "invariant": list(a)},
    )


def _check_chain(space, chain, colengths, context):
    """Containments with exact colengths; ConsistencyError on violation."""
    ring = space.ring
    for idx, ((inner, outer), expected) in enumerate(zip(zip(chain, chain[1:]), colengths)):
        if not lt.contains(ring, outer, inner):
            raise ConsistencyError(
                f"{context}: link {idx} containment fails",
                counterexample={"inner": inner.serialize(), "outer": outer.serialize()},
            )
        got = lt.colength(ring, inner, outer)
        if got != expected:
            raise ConsistencyError(
                f"{context}: link {idx} colength {got} != {expected}",
                counterexample={"inner": inner.serialize(), "outer": outer.serialize()},
            )


def y_chain_holds(space, M0, N0, k):
    """The defining chain of a Y point, as a predicate (no exception)."""
    ring = space.ring
    n = space.n
    std = space.standard
    try:
        Ms = space.dual(M0)
        Ns = space.dual(N0)
        chain = [
            lt.scale(ring, std, 1),
            lt.scale(ring, Ms, 1),
            lt.scale(ring, N0, 1),
            Ns,
            M0,
            std,
        ]
        colens = (k - 1, 1, n - 2 * k, 1, k - 1)
        for (inner, outer), expected in zip(zip(chain, chain[1:]), colens):
            if not lt.contains(ring, outer, inner):
                return False
            if lt.colength(ring, inner, outer) != expected:
                return False
        return True
    except ConsistencyError:
        return False


def y_from_rz(space, L0, k=None):
    """The pair (L0 cap standard, L0 + standard); checks the full chain."""
    ring = space.ring
    if k is None:
        k = stratum_of(space, L0)
    M0 = lt.intersect(ring, L0, space.standard)
    N0 = lt.lattice_sum(ring, L0, space.standard)
    if not y_chain_holds(space, M0, N0, k):
        raise ConsistencyError(
            "intersection/sum of an RZ solution violates the Y chain",
            counterexample={"L0": L0.serialize(), "M0": M0.serialize(), "N0": N0.serialize()},
        )
    return YPoint(M0, N0)


def triple_from_rz(space, L0, k=None):
    if k is None:
        k = stratum_of(space, L0)
    y = y_from_rz(space, L0, k)
    ring = space.ring
    if lt.colength(ring, y.M0, L0) != k or lt.colength(ring, L0, y.N0) != k - 1:
        raise ConsistencyError(
            "triple colengths fail",
            counterexample={"L0": L0.serialize(), "M0": y.M0.serialize(), "N0": y.N0.serialize()},
        )
    return TriplePoint(L0, y.M0, y.N0)


def dl_flag_from_y(space, y, k=None):
    """Reduce the four lattices of the chain mod p*standard to a flag."""
    ring = space.ring
    field = space.field
    std = space.standard
    if k is None:
        k = lt.colength(ring, y.M0, std) + 1
    Ms = space.dual(y.M0)
    Ns = space.dual(y.N0)
    J = lt.image_mod_p(ring, field, lt.scale(ring, Ms, 1), std)
    Kperp = lt.image_mod_p(ring, field, lt.scale(ring, y.N0, 1), std)
    K = lt.image_mod_p(ring, field, Ns, std)
    Jperp = lt.image_mod_p(ring, field, y.M0, std)
    flag = DLPoint(J, Kperp, K, Jperp)
    pairing = space.residue_pairing()
    dims = (J.dim, Kperp.dim, K.dim, Jperp.dim)
    if dims != (k - 1, k, space.n - k, space.n - k + 1):
        raise ConsistencyError(
            f"flag dimensions {dims} wrong for k={k}",
            counterexample=y.serialize(),
        )
    if pairing.perp(K) != Kperp or pairing.perp(J) != Jperp:
        raise ConsistencyError(
            "reduction of a Y pair violates the perp constraints",
            counterexample=y.serialize(),
        )
    return flag


def _coords_in(space, L, col, col_shift):
    """Coordinates of p^(-col_shift) col with respect to L's basis, as work
    ring elements (exact; raises if the vector is not in L)."""
    W = space.ring.work
    delta = L.shift - col_shift
    target = la.scale_col_p(W, col, delta) if delta >= 0 else col
    sol = la.solve_hnf(W, L.cols, L.pivot_vals, target)
    if sol is None:
        raise ConsistencyError("vector expected inside lattice is not")
    if delta < 0:
        lifted = []
        for c in sol:
            q = W.div_p(c, -delta)
            if q is None:
                raise ConsistencyError("vector expected inside lattice is not")
            lifted.append(q)
        sol = lifted
    return sol


def fiber_data(space, y, k=None):
    """The quotient M0*/N0* with its filtration and the rescaled pairing.

    Coset representatives are fixed by the Smith-basis construction, so the
    tabulated Gram matrix is reproducible run to run.
    """
    ring = space.ring
    W = ring.work
    n = space.n
    if k is None:
        k = lt.colength(ring, y.M0, space.standard) + 1
    Mstar = space.dual(y.M0)
    Nstar = space.dual(y.N0)
    # geometric coordinates of Nstar's basis inside Mstar's
    coords = []
    for col in Nstar.cols:
        coords.append(la.col_from_elems(_coords_in(space, Mstar, col, Nstar.shift)))
    grid = la.grid_from_cols(W, tuple(coords), n)
    divisors, left, left_inv, _ = la.snf(W, grid, transforms=True)
    if sorted(divisors) != [0] * (n - 2 * k + 1) + [1] * (2 * k - 1):
        raise ConsistencyError(
            f"fiber quotient divisors {sorted(divisors)} wrong for k={k}",
            counterexample=y.serialize(),
        )
    rep_idx = [i for i, d in enumerate(divisors) if d == 1]
    # Smith basis of Mstar: columns of B_M * left
    smith_basis = la.matmul_cols(
        W, Mstar.cols, tuple(la.col_from_elems(row) for row in _transpose(left)), n
    )
    reps = tuple(smith_basis[i] for i in rep_idx)
    linv_rows = tuple(tuple(left_inv[i]) for i in rep_idx)
    fd = FiberData(k, reps, Mstar.shift, None, None, None, Mstar, linv_rows)

    dim = 2 * k - 1
    v1_rows = [fiber_coords(space, fd, col, y.M0.shift) for col in y.M0.cols]
    vk_rows = [fiber_coords(space, fd, col, 0) for col in space.standard.cols]
    V1 = rs.subspace(space.field, dim, v1_rows)
    Vk = rs.subspace(space.field, dim, vk_rows)
    if V1.dim != 1 or Vk.dim != k or not rs.contains(space.field, Vk, V1):
        raise ConsistencyError(
            f"fiber filtration dimensions ({V1.dim}, {Vk.dim}) wrong",
            counterexample=y.serialize(),
        )
    gram = []
    for a in reps:
        row = []
        for b in reps:
            val = space.pair_scaled(a, Mstar.shift, b, Mstar.shift, extra=1)
            row.append(ring.residue(val))
        gram.append(row)
    beta = rs.ResiduePairing(space.field, gram)
    return FiberData(k, reps, Mstar.shift, V1, Vk, beta, Mstar, linv_rows)


def fiber_coords(space, fd, col, col_shift):
    """Quotient coordinates of p^(-col_shift) col, for vectors inside M0*."""
    ring = space.ring
    W = ring.work
    c = _coords_in(space, fd.mstar, col, col_shift)
    out = []
    for row in fd.linv_rows:
        acc = W.zero
        for j in range(space.n):
            acc = W.add(acc, W.mul(row[j], c[j]))
        out.append(ring.residue(acc))
    return tuple(out)


def _transpose(grid):
    return [[grid[i][j] for i in range(len(grid))] for j in range(len(grid[0]))]


def isotropic_complements(space, fd):
    """All isotropic complements of Vk inside the fiber space.

    Complements are the graphs of maps from a fixed complementary coordinate
    frame into Vk, so exactly q^(k(k-1)) candidates are scanned; the
    isotropy filter does the rest.  (The brute-force twin scans every
    (k-1)-subspace; see verify.)
    """
    field = space.field
    dim = fd.dim
    k = fd.k
    if k == 1:
        return [rs.zero_subspace(dim)]
    _, pivots = rs.rref(field, fd.Vk.rows)
    free_coords = [j for j in range(dim) if j not in pivots]
    assert len(free_coords) == k - 1
    out = []
    vk_rows = fd.Vk.rows
    els = field.all_elements()
    for choice in iproduct(iproduct(els, repeat=k), repeat=k - 1):
        rows = []
        for idx, q in enumerate(free_coords):
            v = [field.zero] * dim
            v[q] = field.one
            for t in range(k):
                c = choice[idx][t]
                if any(c):
                    v = [field.add(x, field.mul(c, ycoef)) for x, ycoef in zip(v, vk_rows[t])]
            rows.append(tuple(v))
        F = rs.subspace(field, dim, rows)
        if fd.beta.is_isotropic(F):
            out.append(F)
    out.sort(key=lambda S: S.rows)
    return out


def complement_from_triple(space, t, fd=None):
    """The image of L0* in the fiber quotient; a valid isotropic complement."""
    if fd is None:
        fd = fiber_data(space, YPoint(t.M0, t.N0))
    Ls = space.dual(t.L0)
    rows = [fiber_coords(space, fd, col, Ls.shift) for col in Ls.cols]
    F = rs.subspace(space.field, fd.dim, rows)
    if F.dim != fd.k - 1:
        raise ConsistencyError(
            f"complement from triple has dimension {F.dim}, expected {fd.k - 1}",
            counterexample=t.serialize(),
        )
    if not fd.beta.is_isotropic(F):
        raise ConsistencyError("complement from triple is not isotropic",
                               counterexample=t.serialize())
    if rs.sum_spaces(space.field, F, fd.Vk).dim != fd.dim:
        raise ConsistencyError("complement from triple does not complement Vk",
                               counterexample=t.serialize())
    return F


def rz_from_y_complement(space, y, fd, F):
    """Inverse of the fibration: rebuild L0 from a Y point and a complement.

    L0* is the preimage of F inside M0*; L0 is then Phi^2 of its dual.
    """
    ring = space.ring
    W = ring.work
    n = space.n
    Nstar = space.dual(y.N0)
    s = max(fd.rep_shift, Nstar.shift)
    gens = []
    for row in F.rows:
        acc = la.zero_col(W, n)
        for a, coeff in enumerate(row):
            if any(coeff):
                lift = W.elem([int(c) for c in coeff])
                acc = la._axpy(W, acc, fd.reps[a], lift)
        gens.append(la.scale_col_p(W, acc, s - fd.rep_shift))
    for col in Nstar.cols:
        gens.append(la.scale_col_p(W, col, s - Nstar.shift))
    Lstar = lt.from_generators(ring, n, s, tuple(gens))
    L0 = space.phi2(space.dual(Lstar))
    return RZPoint(L0)


# ---------------------------------------------------------------------------
# enumeration: submodules of (R/p^2)^n


def _submodule_cost(n, q, pairs):
    total = 0
    for r, t in pairs:
        total += rs.gaussian_binomial(n, t, q) * rs.gaussian_binomial(t, r, q) * q ** (
            r * (n - t)
        )
    return total


def _submodule_pairs(n, naive):
    if naive:
        return [(r, t) for t in range(n + 1) for r in range(t + 1)]
    # an RZ solution has submodule length exactly n + 1
    return [(r, t) for t in range(n + 1) for r in range(t + 1) if r + t == n + 1]


def _window_lattices(space, naive, ceiling):
    """Lattices p*std <= L <= p^(-1)*std via (image, torsion, coset) data."""
    ring = space.ring
    W = ring.work
    field = space.field
    n = space.n
    q = field.q
    pairs = _submodule_pairs(n, naive)
    cost = _submodule_cost(n, q, pairs)
    if cost > ceiling:
        raise CeilingExceeded(cost, ceiling)
    els = field.all_elements()
    for r, t in pairs:
        for T in rs.enumerate_subspaces(field, n, t):
            _, tpiv = rs.rref(field, T.rows)
            coset_cols = [j for j in range(n) if j not in tpiv]
            for Ubar in rs.enumerate_subspaces_within(field, T, r):
                for w in iproduct(iproduct(els, repeat=len(coset_cols)), repeat=r):
                    gens = []
                    for i, urow in enumerate(Ubar.rows):
                        col_elems = []
                        for j in range(n):
                            lift = W.elem([int(c) for c in urow[j]])
                            col_elems.append(lift)
                        # p * coset representative on the free coordinates
                        for slot, j in enumerate(coset_cols):
                            cc = w[i][slot]
                            if any(cc):
                                col_elems[j] = W.add(
                                    col_elems[j], W.mul_p(W.elem([int(c) for c in cc]), 1)
                                )
                        gens.append(la.col_from_elems(col_elems))
                    for trow in T.rows:
                        col_elems = [W.mul_p(W.elem([int(c) for c in trow[j]]), 1)
                                     for j in range(n)]
                        gens.append(la.col_from_elems(col_elems))
                    for col in la.identity_cols(W, n):
                        gens.append(la.scale_col_p(W, col, 2))
                    yield lt.from_generators(ring, n, 1, tuple(gens))


def enumerate_rz(space, ceiling=DEFAULT_CEILING, naive=False):
    """All RZ solutions over the context's coefficient field; sorted.

    The result is memoised on the space (everything involved is immutable);
    the ceiling is still enforced before the memo is consulted.
    """
    cost = _submodule_cost(space.n, space.field.q, _submodule_pairs(space.n, naive))
    if cost > ceiling:
        raise CeilingExceeded(cost, ceiling)
    memo = getattr(space, "_rz_memo", None)
    if memo is None:
        memo = space._rz_memo = {}
    if naive in memo:
        return memo[naive]
    seen = {}
    for L in _window_lattices(space, naive, ceiling):
        if L in seen:
            continue
        seen[L] = None
        if is_rz_point(space, L):
            seen[L] = RZPoint(L)
    points = [pt for pt in seen.values() if pt is not None]
    points.sort(key=lambda pt: pt.sort_key())
    memo[naive] = points
    return points


def enumerate_y(space, k, ceiling=DEFAULT_CEILING, naive=False):
    """All Y pairs for stratum k; lattice pairs built from residue subspaces
    and filtered by the defining dual chain."""
    ring = space.ring
    field = space.field
    n = space.n
    q = field.q
    if not 1 <= k <= n // 2:
        raise UsageError(f"k = {k} out of range for n = {n}")
    cost = rs.gaussian_binomial(n, n - k + 1, q) * rs.gaussian_binomial(n, k, q)
    if cost > ceiling:
        raise CeilingExceeded(cost, ceiling)
    memo = getattr(space, "_y_memo", None)
    if memo is None:
        memo = space._y_memo = {}
    if (k, naive) in memo:
        return memo[(k, naive)]
    std = space.standard
    out = []
    for SM in rs.enumerate_subspaces(field, n, n - k + 1):
        M0 = lt.preimage_of_subspace(ring, field, SM, std)
        for SN in rs.enumerate_subspaces(field, n, k):
            if not naive and not rs.contains(field, SM, SN):
                continue  # pN0 <= N0* <= M0 forces the residue containment
            pN0 = lt.preimage_of_subspace(ring, field, SN, std)
            N0 = lt.scale(ring, pN0, -1)
            if y_chain_holds(space, M0, N0, k):
                out.append(YPoint(M0, N0))
    out.sort(key=lambda y: y.sort_key())
    memo[(k, naive)] = out
    return out


def enumerate_dl(space, k, ceiling=DEFAULT_CEILING, naive=False):
    """All DL flags for stratum k over the context's field."""
    field = space.field
    n = space.n
    q = field.q
    if not 1 <= k <= n // 2:
        raise UsageError(f"k = {k} out of range for n = {n}")
    pairing = space.residue_pairing()
    out = []
    if naive:
        cost = rs.gaussian_binomial(n, k - 1, q) * rs.gaussian_binomial(n, n - k, q)
        if cost > ceiling:
            raise CeilingExceeded(cost, ceiling)
        for J in rs.enumerate_subspaces(field, n, k - 1):
            Jperp = pairing.perp(J)
            for K in rs.enumerate_subspaces(field, n, n - k):
                Kperp = pairing.perp(K)
                if (
                    rs.contains(field, Kperp, J)
                    and rs.contains(field, K, Kperp)
                    and rs.contains(field, Jperp, K)
                ):
                    out.append(DLPoint(J, Kperp, K, Jperp))
    else:
        cost = rs.gaussian_binomial(n, n - k, q) * (1 + rs.gaussian_binomial(k, k - 1, q))
        if cost > ceiling:
            raise CeilingExceeded(cost, ceiling)
        for K in rs.enumerate_subspaces(field, n, n - k):
            Kperp = pairing.perp(K)
            if not rs.contains(field, K, Kperp):
                continue
            for J in rs.enumerate_subspaces_within(field, Kperp, k - 1):
                Jperp = pairing.perp(J)
                if rs.contains(field, Jperp, K):
                    out.append(DLPoint(J, Kperp, K, Jperp))
    out.sort(key=lambda f: f.sort_key())
    return out


# ---------------------------------------------------------------------------
# hearts


def hearts(space, ceiling=DEFAULT_CEILING):
    """All scalar-self-dual lattices between p*std and std.

    These are the preimages of maximal isotropic subspaces rational over the
    quadratic subfield (Galois descent: the echelon basis of a
    sigma^2-stable subspace has entries fixed by sigma^2).
    """
    ring = space.ring
    field = space.field
    n = space.n
    if n % 2:
        raise UsageError("hearts exist only for even rank")
    sub = field.subfield_elements(2)
    cost = rs.gaussian_binomial(n, n // 2, len(sub))
    if cost > ceiling:
        raise CeilingExceeded(cost, ceiling)
    pairing = space.residue_pairing()
    std = space.standard
    out = []
    for S in rs.enumerate_subspaces(field, n, n // 2, elements=sub):
        if not pairing.is_isotropic(S):
            continue
        lam0 = lt.preimage_of_subspace(ring, field, S, std)
        if space.dual(lam0) != lt.scale(ring, lam0, -1):
            raise ConsistencyError(
                "maximal isotropic lift is not scalar-self-dual",
                counterexample={"iso": S.serialize()},
            )
        if space.phi2(lam0) != lam0:
            raise ConsistencyError(
                "maximal isotropic lift is not Phi-rational",
                counterexample={"iso": S.serialize()},
            )
        out.append(HeartLattice(lam0, S))
    out.sort(key=lambda h: h.sort_key())
    return out


def heart_of(space, L0):
    """The heart through a deepest-stratum point: p*(L0 + standard)."""
    ring = space.ring
    n = space.n
    if n % 2:
        raise UsageError("hearts exist only for even rank")
    N0 = lt.lattice_sum(ring, L0, space.standard)
    if space.dual(N0) != lt.scale(ring, N0, 1):
        raise ConsistencyError(
            "sum lattice of a deepest-stratum point is not scalar-dual "
            "(pN0 != N0*)",
            counterexample={"L0": L0.serialize(), "N0": N0.serialize()},
        )
    if space.phi2(N0) != N0:
        raise ConsistencyError(
            "sum lattice is not Phi-rational",
            counterexample={"L0": L0.serialize(), "N0": N0.serialize()},
        )
    lam0 = lt.scale(ring, N0, 1)
    iso = lt.image_mod_p(ring, space.field, lam0, space.standard)
    return HeartLattice(lam0, iso)


def is_heart_point(space, L0, heart):
    """The single chain lam0 <=(n/2-1) L0* <=2 L0 <=(n/2-1) p^(-1)lam0."""
    ring = space.ring
    n = space.n
    try:
        Ls = space.dual(L0)
        chain = [heart.lam0, Ls, L0, lt.scale(ring, heart.lam0, -1)]
        colens = (n // 2 - 1, 2, n // 2 - 1)
        for (inner, outer), expected in zip(zip(chain, chain[1:]), colens):
            if not lt.contains(ring, outer, inner):
                return False
            if lt.colength(ring, inner, outer) != expected:
                return False
        return True
    except ConsistencyError:
        return False


def enumerate_heart_points(space, heart, ceiling=DEFAULT_CEILING):
    """All solutions of the heart chain over the context's field."""
    ring = space.ring
    field = space.field
    n = space.n
    q = field.q
    cost = rs.gaussian_binomial(n, n // 2 + 1, q)
    if cost > ceiling:
        raise CeilingExceeded(cost, ceiling)
    big = lt.scale(ring, heart.lam0, -1)  # p^(-1) lam0
    out = []
    for S in rs.enumerate_subspaces(field, n, n // 2 + 1):
        L0 = lt.preimage_of_subspace(ring, field, S, big)
        if is_heart_point(space, L0, heart):
            out.append(RZPoint(L0))
    out.sort(key=lambda pt: pt.sort_key())
    return out


def enumerate_dl_heart(space, heart, ceiling=DEFAULT_CEILING):
    """All flags of the heart flag variety, in heart-basis coordinates."""
    field = space.field
    n = space.n
    q = field.q
    cost = rs.gaussian_binomial(n, n // 2 - 1, q)
    if cost > ceiling:
        raise CeilingExceeded(cost, ceiling)
    pairing = space.rescaled_pairing(heart.lam0)
    out = []
    for F in rs.enumerate_subspaces(field, n, n // 2 - 1):
        if not pairing.is_isotropic(F):
            continue
        Fp = pairing.perp(F)
        if not rs.contains(field, Fp, F):
            continue
        out.append(DLHeartPoint(F, Fp))
    out.sort(key=lambda f: f.sort_key())
    return out


def dl_heart_flag(space, L0, heart):
    """Reduce (pL0*, pL0) mod p*lam0 in heart coordinates."""
    ring = space.ring
    field = space.field
    n = space.n
    Ls = space.dual(L0)
    F = lt.image_mod_p(ring, field, lt.scale(ring, Ls, 1), heart.lam0)
    Fdag = lt.image_mod_p(ring, field, lt.scale(ring, L0, 1), heart.lam0)
    pairing = space.rescaled_pairing(heart.lam0)
    if (F.dim, Fdag.dim) != (n // 2 - 1, n // 2 + 1):
        raise ConsistencyError(
            f"heart flag dimensions ({F.dim}, {Fdag.dim}) wrong",
            counterexample={"L0": L0.serialize(), "heart": heart.serialize()},
        )
    if pairing.perp(F) != Fdag:
        raise ConsistencyError(
            "heart flag violates the rescaled perp constraint",
            counterexample={"L0": L0.serialize(), "heart": heart.serialize()},
        )
    return DLHeartPoint(F, Fdag)


# ---------------------------------------------------------------------------
# component labels


def xmu_label(space, L0):
    """Stratum label with both component invariants verified.

    Interior strata carry the invariant pair (lambda_k, -reverse lambda_k);
    the deepest stratum of even rank is labelled by its heart, with the
    colength conditions of the component description checked on both sides.
    """
    ring = space.ring
    n = space.n
    k = stratum_of(space, L0)
    inv0 = lt.rel_position(ring, L0, space.standard)
    Ls = space.dual(L0)
    inv1 = lt.rel_position(ring, Ls, space.standard)
    if inv1 != dual_stratum_invariant(n, k):
        raise ConsistencyError(
            f"conjugate-component invariant {inv1} inconsistent with stratum {k}",
            counterexample={"L0": L0.serialize()},
        )
    if n % 2 == 0 and k == n // 2:
        hrt = heart_of(space, L0)
        big = lt.scale(ring, hrt.lam0, -1)
        checks = (
            lt.colength(ring, hrt.lam0, L0) == k + 1
            and lt.colength(ring, L0, big) == k - 1
            and lt.colength(ring, hrt.lam0, Ls) == k - 1
            and lt.colength(ring, Ls, big) == k + 1
        )
        if not checks:
            raise ConsistencyError(
                "heart colength conditions fail at the deepest stratum",
                counterexample={"L0": L0.serialize(), "lam0": hrt.lam0.serialize()},
            )
        return StratumLabel(k, "heart", inv0, inv1, hrt)
    return StratumLabel(k, "interior", inv0, inv1, None)

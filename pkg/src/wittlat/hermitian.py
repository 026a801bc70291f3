"""The split hermitian model on R^n and its right-dual/perp machinery.

The ambient module carries the pairing

    b(x, y) = sum_i x_i sigma(y_{n+1-i}),

linear in the first slot and sigma-semilinear in the second: the coordinate
form of the trace pairing for the antidiagonal hermitian form in the
standard basis.  The coordinate formula is a derived convention; the axiom
tests (Gram values, semilinearity, b(Phi^2 x, y) = sigma(b(y, x))) pin it
down, so an error here would be caught rather than propagated.

Right duals satisfy L** = Phi^(-2) L and Phi^2(L*) = (Phi^2 L)*, where
Phi^2 acts coordinatewise as sigma^2.
"""

from . import lattice as lt
from . import linalg as la
from . import residue as rs
from .errors import PrecisionError, UsageError


class HermitianSpace:
    """Rank-n split hermitian module over a ring with even residue degree."""

    def __init__(self, ring, n):
        if ring.m % 2:
            raise UsageError(
                "hermitian model needs even residue degree (the quadratic "
                "unramified subring must embed)"
            )
        if n < 2:
            raise UsageError("hermitian rank must be at least 2")
        self.ring = ring
        self.n = n
        self.field = rs.ResidueField(ring)
        self.standard = lt.standard(ring, n)
        self._dual_cache = {}

    # -- the pairing -------------------------------------------------------

    def pair(self, x, y):
        """b(x, y) for vectors of ring elements (length n, no shifts)."""
        r = self.ring
        n = self.n
        acc = r.zero
        for i in range(n):
            if r.is_zero(x[i]):
                continue
            acc = r.add(acc, r.mul(x[i], r.frobenius(y[n - 1 - i])))
        return acc

    def pair_scaled(self, u, su, v, sv, extra=0):
        """p^extra * b(p^(-su) u, p^(-sv) v) as a ring element.

        u and v are integral flat columns; raises if the result is not
        integral at this precision.
        """
        W = self.ring.work
        m = W.m
        ux = [la.entry(u, i, m) for i in range(self.n)]
        vx = [la.entry(v, i, m) for i in range(self.n)]
        acc = W.zero
        for i in range(self.n):
            if W.is_zero(ux[i]):
                continue
            acc = W.add(acc, W.mul(ux[i], W.frobenius(vx[self.n - 1 - i])))
        drop = su + sv - extra
        if drop > 0:
            out = W.div_p(acc, drop)
            if out is None:
                raise PrecisionError("pairing value is not integral at this scale")
            return self.ring.reduce_from_work(out)
        return self.ring.reduce_from_work(W.mul_p(acc, -drop))

    # -- duals and Frobenius twists ----------------------------------------

    def dual(self, L):
        """Right dual L* = {x : b(L, x) in R}."""
        cached = self._dual_cache.get(L)
        if cached is not None:
            return cached
        ring = self.ring
        W = ring.work
        n = self.n
        std = self.standard
        # minimal s with p^s * standard inside L bounds the dual from above
        s = 0
        while s < ring.N - lt.GUARD:
            if lt.contains(ring, L, lt.scale(ring, std, s)):
                break
            s += 1
        else:
            raise PrecisionError("lattice too deep in the window to dualise")
        c = L.shift + s
        if c < 0:
            raise PrecisionError("dual of a lattice this large is not integral")
        m = W.m
        grid = []
        for col in L.cols:
            # condition on w = sigma(x):  sum_i col_(n-1-i) * w_i = 0 mod p^c
            grid.append([la.entry(col, n - 1 - i, m) for i in range(n)])
        gens = la.kernel_mod(W, grid, c)
        gens = la.map_entries(W, tuple(gens), lambda e: W.frobenius(e, -1))
        out = lt.from_generators(ring, n, s, gens)
        self._dual_cache[L] = out
        return out

    def phi2(self, L, power=1):
        """Coordinatewise sigma^(2*power), an ambient automorphism."""
        W = self.ring.work
        k = (2 * power) % self.ring.m
        if k == 0:
            return L
        cols = la.map_entries(W, L.cols, lambda e: W.frobenius(e, k))
        return lt.from_generators(self.ring, self.n, L.shift, cols)

    # -- residue pairings ----------------------------------------------------

    def residue_pairing(self):
        """Reduction of b on standard/pstandard: antidiagonal Gram."""
        f = self.field
        gram = [
            [f.one if i + j == self.n - 1 else f.zero for j in range(self.n)]
            for i in range(self.n)
        ]
        return rs.ResiduePairing(f, gram)

    def rescaled_pairing(self, basis_lattice):
        """Reduction of p^(-1) b in the coordinates of the given lattice.

        Used for the hearts: the rescaled form is integral exactly when the
        lattice is scalar-self-dual, and nondegenerate mod p in that case;
        anything else is reported as an error.
        """
        ring = self.ring
        W = ring.work
        n = self.n
        m = W.m
        e = basis_lattice.shift
        gram = []
        for ci in basis_lattice.cols:
            row = []
            for cj in basis_lattice.cols:
                try:
                    val = self.pair_scaled(ci, e, cj, e, extra=-1)
                except PrecisionError:
                    raise UsageError(
                        "rescaled pairing is not integral: the basis is not "
                        "that of a scalar-self-dual lattice"
                    )
                row.append(ring.residue(val))
            gram.append(row)
        pairing = rs.ResiduePairing(self.field, gram)
        if not pairing.is_nondegenerate():
            raise UsageError(
                "rescaled pairing is degenerate: the basis is not that of a "
                "scalar-self-dual lattice"
            )
        return pairing

    # -- window helpers --------------------------------------------------------

    def in_window(self, L):
        """p * standard <= L <= p^(-1) * standard."""
        ring = self.ring
        std = self.standard
        return lt.contains(ring, L, lt.scale(ring, std, 1)) and lt.contains(
            ring, lt.scale(ring, std, -1), L
        )

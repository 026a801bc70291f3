"""Exact arithmetic in R = W_N(F_{p^m}), the truncated unramified ring.

R is presented as (Z/p^N)[x]/(F(x)) for a fixed monic degree-m polynomial F
that reduces to an irreducible polynomial over F_p.  Elements are coefficient
tuples with respect to the power basis 1, x, ..., x^(m-1); every coordinate
lies in [0, p^N).

The Frobenius lift sigma sends x to the unique root of F congruent to x^p
mod p (Hensel lift), and extends coefficientwise-fixed on Z/p^N.  sigma is a
ring automorphism of order m.

Each ring carries a companion "work ring": the same presentation at a higher
precision N + headroom.  Module-level algebra (normal forms, duals, kernels)
lifts its inputs there so that every division performed along the way stays
exact; results are reduced back to the user precision.  Canonical lattice
data never needs the extra digits, so nothing user-visible depends on the
headroom.
"""

from dataclasses import dataclass

from . import kernels
from .errors import PrecisionError, UsageError

DEFAULT_HEADROOM = 12


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class RingParams:
    """Ring shape: residue characteristic, residue degree, retained digits."""

    p: int
    m: int
    N: int

    def validate(self):
        if not _is_prime(self.p):
            raise UsageError(f"p = {self.p} is not prime")
        if self.m < 1:
            raise UsageError(f"residue degree m = {self.m} must be >= 1")
        if self.N < 1:
            raise UsageError(f"precision N = {self.N} must be >= 1")
        if self.m > kernels.MAX_DEGREE:
            raise UsageError(f"residue degree m = {self.m} exceeds the supported bound")


# ---------------------------------------------------------------------------
# polynomial helpers over F_p (only used while choosing F)


def _polmul_fp(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _polmod_fp(a, f, p):
    a = list(a)
    df = len(f) - 1
    while len(a) - 1 >= df and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        c = a[-1]
        shift = len(a) - 1 - df
        for i in range(df + 1):
            a[shift + i] = (a[shift + i] - c * f[i]) % p
        a.pop()
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _polpow_x_fp(e, f, p):
    """x^e mod f over F_p."""
    result = [1]
    base = [0, 1]
    base = _polmod_fp(base, f, p)
    while e:
        if e & 1:
            result = _polmod_fp(_polmul_fp(result, base, p), f, p)
        base = _polmod_fp(_polmul_fp(base, base, p), f, p)
        e >>= 1
    return result


def _polgcd_fp(a, b, p):
    a, b = list(a), list(b)
    while any(b):
        # a mod b
        inv = pow(b[-1], p - 2, p)
        while len(a) >= len(b) and any(a):
            if a[-1] == 0:
                a.pop()
                continue
            c = (a[-1] * inv) % p
            shift = len(a) - len(b)
            for i in range(len(b)):
                a[shift + i] = (a[shift + i] - c * b[i]) % p
            a.pop()
        if not a:
            a = [0]
        a, b = b, a
    return a


def _is_irreducible_fp(f, p):
    m = len(f) - 1
    if m == 1:
        return True
    xq = _polpow_x_fp(p ** m, f, p)
    # x^(p^m) == x mod f
    x = [0, 1]
    if _polmod_fp([(a - b) % p for a, b in
                   zip(xq + [0] * (2 - len(xq)), x)] if len(xq) <= 2 else
                  [(xq[i] - (x[i] if i < 2 else 0)) % p for i in range(len(xq))],
                  f, p) != [0]:
        return False
    divisors = set()
    d = 2
    mm = m
    while d * d <= mm:
        if mm % d == 0:
            divisors.add(d)
            while mm % d == 0:
                mm //= d
        d += 1
    if mm > 1:
        divisors.add(mm)
    for d in divisors:
        xe = _polpow_x_fp(p ** (m // d), f, p)
        diff = [(xe[i] if i < len(xe) else 0) - (1 if i == 1 else 0) for i in range(max(len(xe), 2))]
        diff = [c % p for c in diff]
        g = _polgcd_fp(diff, f, p)
        if len(g) > 1:
            return False
    return True


def least_irreducible(p, m):
    """Lexicographically least monic irreducible of degree m over F_p.

    Candidates x^m + c are scanned in increasing order of the integer
    c_0 + c_1 p + ... encoding the lower coefficients; the first irreducible
    wins.  Reproducible across runs; no Conway-polynomial compatibility is
    promised.
    """
    for code in range(p ** m):
        lower = []
        c = code
        for _ in range(m):
            lower.append(c % p)
            c //= p
        f = lower + [1]
        if _is_irreducible_fp(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # unreachable


# ---------------------------------------------------------------------------


class CoeffRing:
    """Arithmetic context for W_N(F_{p^m}) = (Z/p^N)[x]/(F)."""

    def __init__(self, p, m, N, fcoeffs, headroom=0):
        self.p = p
        self.m = m
        self.N = N
        self.modulus = p ** N
        self.fcoeffs = fcoeffs  # monic, m+1 naive-lift coefficients in [0, p)
        P = self.modulus
        # reduction table: row i = coefficients of x^(m+i) mod F
        rows = []
        cur = [(-fcoeffs[j]) % P for j in range(m)]  # x^m mod F
        rows.append(tuple(cur))
        for _ in range(m - 2):
            nxt = [0] * m
            top = cur[m - 1]
            for j in range(m - 1):
                nxt[j + 1] = cur[j]
            for j in range(m):
                nxt[j] = (nxt[j] + top * rows[0][j]) % P
            rows.append(tuple(nxt))
            cur = nxt
        self.red = tuple(v for row in rows for v in row)
        self._kern = kernels.backend_for(P, m)
        self.backend = self._kern.BACKEND
        self.zero = (0,) * m
        self.one = tuple(1 if i == 0 else 0 for i in range(m))
        self.gen = tuple(1 if i == 1 else 0 for i in range(m)) if m > 1 else self.zero
        self._pow_p = [p ** i for i in range(N + 1)]
        self._sigma_powers = None  # filled by _init_frobenius
        if headroom:
            self.work = CoeffRing(p, m, N + headroom, fcoeffs)
            self.work._init_frobenius()
            sig = tuple(self.reduce_from_work(s) for s in self.work._sigma_x_powers)
            self._install_frobenius(sig)
        else:
            self.work = self

    # -- element construction -------------------------------------------------

    def elem(self, coeffs):
        coeffs = tuple(int(c) % self.modulus for c in coeffs)
        if len(coeffs) != self.m:
            raise UsageError(f"expected {self.m} coordinates, got {len(coeffs)}")
        return coeffs

    def from_int(self, k):
        return tuple((k % self.modulus) if i == 0 else 0 for i in range(self.m))

    # -- ring operations -------------------------------------------------------

    def add(self, a, b):
        return self._kern.el_add(a, b, self.modulus)

    def sub(self, a, b):
        return self._kern.el_sub(a, b, self.modulus)

    def neg(self, a):
        return self._kern.el_neg(a, self.modulus)

    def mul(self, a, b):
        return self._kern.el_mul(a, b, self.m, self.red, self.modulus)

    def int_scale(self, a, k):
        k %= self.modulus
        return tuple((c * k) % self.modulus for c in a)

    def pow_(self, a, e):
        result = self.one
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def is_zero(self, a):
        return all(c == 0 for c in a)

    def valuation(self, a):
        """Largest v <= N with a in p^v R; N itself means ">= N" (zero at
        this precision, not certified zero)."""
        v = self.N
        for c in a:
            if c == 0:
                continue
            w = 0
            while c % self.p == 0:
                c //= self.p
                w += 1
            if w < v:
                v = w
        return v

    def is_unit(self, a):
        return any(c % self.p for c in a)

    def invert(self, a):
        """Inverse of a unit, by Newton lifting the residue-field inverse."""
        if not self.is_unit(a):
            raise PrecisionError("cannot invert a non-unit")
        b = self._residue_inverse(a)
        prec = 1
        while prec < self.N:
            # b <- b*(2 - a*b), doubling the number of correct digits
            t = self.sub(self.from_int(2), self.mul(a, b))
            b = self.mul(b, t)
            prec *= 2
        return b

    def _residue_inverse(self, a):
        # inverse mod p via a^(p^m - 2) in the residue field
        abar = tuple(c % self.p for c in a)
        q = self.p ** self.m
        res = self.one
        base = abar
        e = q - 2
        while e:
            if e & 1:
                res = tuple(c % self.p for c in self.mul(res, base))
            base = tuple(c % self.p for c in self.mul(base, base))
            e >>= 1
        return res

    def div_p(self, a, v):
        """Exact division by p^v; None when a is not divisible."""
        if v == 0:
            return a
        pv = self.p ** v
        out = []
        for c in a:
            if c % pv:
                return None
            out.append(c // pv)
        return tuple(out)

    def mul_p(self, a, v):
        pv = self.p ** v
        return tuple((c * pv) % self.modulus for c in a)

    # -- Frobenius --------------------------------------------------------------

    def _init_frobenius(self):
        if self.m == 1:
            self._install_frobenius((self.zero,))
            return
        s = self._hensel_sigma_x()
        powers = [self.gen, s]
        for _ in range(self.m - 2):
            powers.append(self.apply_poly(powers[-1], s))
        self._install_frobenius(tuple(powers[:self.m]))

    def _install_frobenius(self, sigma_x_powers):
        """sigma_x_powers[k] = sigma^k(x); build evaluation tables."""
        self._sigma_x_powers = sigma_x_powers
        tables = []
        for k in range(self.m):
            s = sigma_x_powers[k]
            basis = [self.one]
            for _ in range(self.m - 1):
                basis.append(self.mul(basis[-1], s))
            tables.append(tuple(basis))
        self._sigma_powers = tuple(tables)

    def _hensel_sigma_x(self):
        if self.m == 1:
            return self.zero
        # initial approximation: x^p mod F, taken mod p
        s = tuple(c % self.p for c in self.pow_(self.gen, self.p))
        # Newton: s <- s - F(s)/F'(s)
        for _ in range(self.N.bit_length() + 1):
            fs = self.eval_f(s)
            if self.is_zero(fs):
                break
            dfs = self.eval_df(s)
            s = self.sub(s, self.mul(fs, self.invert(dfs)))
        if not self.is_zero(self.eval_f(s)):
            raise PrecisionError("Hensel lift of the Frobenius failed to converge")
        return s

    def eval_f(self, s):
        acc = self.from_int(self.fcoeffs[self.m])
        for i in range(self.m - 1, -1, -1):
            acc = self.add(self.mul(acc, s), self.from_int(self.fcoeffs[i]))
        return acc

    def eval_df(self, s):
        acc = self.from_int(self.m * self.fcoeffs[self.m])
        for i in range(self.m - 1, 0, -1):
            acc = self.add(self.mul(acc, s), self.from_int(i * self.fcoeffs[i]))
        return acc

    def apply_poly(self, a, s):
        """Evaluate the coefficient polynomial of a at s."""
        acc = self.zero
        for i in range(self.m - 1, -1, -1):
            acc = self.add(self.mul(acc, s), self.from_int(a[i]))
        return acc

    def frobenius(self, a, power=1):
        """sigma^power(a); negative powers go through sigma^m = id."""
        if self._sigma_powers is None:
            self._init_frobenius()
        k = power % self.m
        if k == 0:
            return a
        basis = self._sigma_powers[k]
        acc = self.zero
        for i in range(self.m):
            if a[i]:
                acc = self.add(acc, self.int_scale(basis[i], a[i]))
        return acc

    # -- precision plumbing ------------------------------------------------------

    def lift_to_work(self, a):
        return a if self.work is self else a

    def reduce_from_work(self, a):
        return tuple(c % self.modulus for c in a)

    def reduce_mod(self, a, prec):
        pv = self.p ** prec
        return tuple(c % pv for c in a)

    def residue(self, a):
        return tuple(c % self.p for c in a)

    # -- misc ---------------------------------------------------------------------

    def describe(self):
        return {
            "p": self.p,
            "m": self.m,
            "N": self.N,
            "F": [int(c) for c in self.fcoeffs],
        }

    def __repr__(self):
        return f"CoeffRing(p={self.p}, m={self.m}, N={self.N})"


def make_ring(params, seed=0, headroom=DEFAULT_HEADROOM):
    """Build the ring context for params.

    The defining polynomial is the lexicographically least monic irreducible
    of degree m over F_p, lifted naively; the choice does not depend on the
    seed (the seed is recorded for downstream samplers).  A work ring at
    precision N + headroom is attached for module-level algebra.
    """
    params.validate()
    if params.p ** params.N > 2 ** 62:
        raise UsageError(
            f"p^N = {params.p ** params.N} exceeds the supported integer width"
        )
    f = least_irreducible(params.p, params.m)
    ring = CoeffRing(params.p, params.m, params.N, f, headroom=headroom)
    ring.params = params
    ring.seed = seed
    return ring

"""Executable theorem suites over enumerated solution sets.

Each suite checks one structural statement of the model exhaustively at desk
scale and returns a machine-readable SuiteReport.  A failing suite carries
the first counterexample in replayable serialized form; suites themselves
never raise on mathematical failure (only on resource/precision limits).

Scheme-level content (smoothness, irreducibility, closed immersions) is
verified only through its point-level shadow: bijections of solution sets
and count growth.  Each report states what was actually checked.
"""

import math
import random
import time
from dataclasses import dataclass, field

from . import lattice as lt
from . import linalg as la
from . import moduli as md
from . import residue as rs
from .hermitian import HermitianSpace
from .coeff import RingParams, make_ring

DEFAULT_ORACLE_COST = 1_000_000


@dataclass
class SuiteReport:
    suite: str
    params: dict
    status: str  # "pass" | "fail"
    counts: dict = field(default_factory=dict)
    counterexample: dict | None = None
    seconds: float = 0.0
    checked: str = ""

    @property
    def ok(self):
        return self.status == "pass"

    def serialize(self):
        out = {
            "suite": self.suite,
            "params": self.params,
            "status": self.status,
            "counts": self.counts,
            "seconds": round(self.seconds, 3),
            "checked": self.checked,
        }
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


def _params_of(space, **extra):
    d = space.ring.describe()
    d["n"] = space.n
    d.update(extra)
    return d


def random_window_lattice(space, rng):
    """A uniform-ish random lattice in the window, for sampling suites."""
    ring = space.ring
    W = ring.work
    n = space.n
    cols = []
    for _ in range(n):
        elems = [
            W.elem([rng.randrange(ring.p ** 2) for _ in range(W.m)]) for _ in range(n)
        ]
        cols.append(la.col_from_elems(elems))
    for c in la.identity_cols(W, n):
        cols.append(la.scale_col_p(W, c, 2))
    return lt.from_generators(ring, n, 1, tuple(cols))


def suite_duality(space, samples=200, seed=0, dual_fn=None):
    """Duality identities and pairing axioms on random window lattices.

    dual_fn is a test seam: substituting a broken dual must flip the suite
    to fail with a counterexample.
    """
    t0 = time.time()
    ring = space.ring
    rng = random.Random(seed)
    dual = dual_fn if dual_fn is not None else space.dual
    counts = {"samples": samples}
    ce = None
    checked = (
        "(L*)* = Phi^-2 L; Phi^2(L*) = (Phi^2 L)*; standard self-dual; "
        "inclusion reversal; colength duality; pairing axioms"
    )

    def fail(name, **data):
        nonlocal ce
        ce = {"check": name}
        ce.update(data)

    if dual(space.standard) != space.standard:
        fail("standard_self_dual")
    n = space.n
    for i in range(samples):
        if ce:
            break
        L = random_window_lattice(space, rng)
        Ls = dual(L)
        if dual(Ls) != space.phi2(L, -1):
            fail("double_dual", L=L.serialize())
            break
        if space.phi2(dual(L)) != dual(space.phi2(L)):
            fail("phi2_dual_compat", L=L.serialize())
            break
        M = lt.lattice_sum(ring, L, random_window_lattice(space, rng))
        Ms = dual(M)
        if not lt.contains(ring, Ls, Ms):
            fail("inclusion_reversal", L=L.serialize(), M=M.serialize())
            break
        if lt.colength(ring, Ms, Ls) != lt.colength(ring, L, M):
            fail("colength_duality", L=L.serialize(), M=M.serialize())
            break
    # pairing axioms
    if not ce:
        for _ in range(5 * samples):
            x = [ring.elem([rng.randrange(ring.modulus) for _ in range(ring.m)])
                 for _ in range(n)]
            y = [ring.elem([rng.randrange(ring.modulus) for _ in range(ring.m)])
                 for _ in range(n)]
            phix = [ring.frobenius(c, 2) for c in x]
            if space.pair(phix, y) != ring.frobenius(space.pair(y, x)):
                fail("pair_phi2_symmetry", x=[list(c) for c in x], y=[list(c) for c in y])
                break
        basis = [[ring.one if j == i else ring.zero for j in range(n)] for i in range(n)]
        for i in range(n):
            for j in range(n):
                expected = ring.one if i + j == n - 1 else ring.zero
                if space.pair(basis[i], basis[j]) != expected:
                    fail("gram_value", i=i, j=j)
    return SuiteReport(
        "duality",
        _params_of(space, samples=samples, seed=seed),
        "fail" if ce else "pass",
        counts,
        ce,
        time.time() - t0,
        checked,
    )


def suite_stratification(space, ceiling=md.DEFAULT_CEILING):
    """Exhaustive stratification: unique stratum per solution, label
    consistency, and (even rank) heart cover of the deepest stratum."""
    t0 = time.time()
    n = space.n
    ce = None
    points = md.enumerate_rz(space, ceiling)
    per_stratum = {}
    heart_set = None
    if n % 2 == 0:
        heart_set = {h.lam0 for h in md.hearts(space, ceiling)}
    for pt in points:
        try:
            label = md.xmu_label(space, pt.L0)
        except Exception as exc:  # ConsistencyError carries the counterexample
            ce = {"check": "label", "error": str(exc), "L0": pt.L0.serialize()}
            break
        k = label.k
        per_stratum[k] = per_stratum.get(k, 0) + 1
        if not 1 <= k <= n // 2:
            ce = {"check": "stratum_range", "k": k, "L0": pt.L0.serialize()}
            break
        if n % 2 == 0 and k == n // 2:
            if label.heart is None or label.heart.lam0 not in heart_set:
                ce = {"check": "heart_cover", "L0": pt.L0.serialize()}
                break
            if not md.is_heart_point(space, pt.L0, label.heart):
                ce = {"check": "heart_membership", "L0": pt.L0.serialize()}
                break
    counts = {"total": len(points)}
    counts.update({f"stratum_{k}": v for k, v in sorted(per_stratum.items())})
    if heart_set is not None:
        counts["hearts"] = len(heart_set)
    return SuiteReport(
        "stratification",
        _params_of(space, ceiling=ceiling),
        "fail" if ce else "pass",
        counts,
        ce,
        time.time() - t0,
        "every solution gets exactly one stratum label; deepest stratum covered by hearts",
    )


def suite_theorem_a(space, k, ceiling=md.DEFAULT_CEILING):
    """Three-way bijection at stratum k:

    (a) solution -> (Y pair, isotropic complement) is injective,
    (b) every (Y pair, complement) arises exactly once and reconstructs,
    (c) Y pairs biject with DL flags via reduction.
    """
    t0 = time.time()
    ce = None
    rz_all = md.enumerate_rz(space, ceiling)
    rzk = [pt for pt in rz_all if md.stratum_of(space, pt.L0) == k]
    ys = md.enumerate_y(space, k, ceiling)
    dls = md.enumerate_dl(space, k, ceiling)
    counts = {"rz_k": len(rzk), "y": len(ys), "dl": len(dls)}

    # (c) flags
    flag_keys = {}
    for y in ys:
        f = md.dl_flag_from_y(space, y, k)
        key = f.sort_key()
        if key in flag_keys:
            ce = {"check": "flag_injective", "y1": flag_keys[key].serialize(),
                  "y2": y.serialize()}
            break
        flag_keys[key] = y
    if not ce:
        dl_keys = {f.sort_key() for f in dls}
        if set(flag_keys) != dl_keys:
            ce = {"check": "flag_surjective",
                  "missing": len(dl_keys - set(flag_keys)),
                  "extra": len(set(flag_keys) - dl_keys)}

    # (b) fibers
    pair_index = {}
    total_pairs = 0
    if not ce:
        for y in ys:
            fd = md.fiber_data(space, y, k)
            comps = md.isotropic_complements(space, fd)
            total_pairs += len(comps)
            for F in comps:
                back = md.rz_from_y_complement(space, y, fd, F)
                if not md.is_rz_point(space, back.L0) or md.stratum_of(space, back.L0) != k:
                    ce = {"check": "reconstruction_lands_in_stratum",
                          "y": y.serialize(), "F": F.serialize()}
                    break
                key = (y.sort_key(), F.rows)
                pair_index[key] = back
            if ce:
                break
    counts["pairs"] = total_pairs

    # (a) forward map hits every pair exactly once
    if not ce:
        hit = {}
        for pt in rzk:
            t = md.triple_from_rz(space, pt.L0, k)
            y = md.YPoint(t.M0, t.N0)
            fd = md.fiber_data(space, y, k)
            F = md.complement_from_triple(space, t, fd)
            key = (y.sort_key(), F.rows)
            if key in hit:
                ce = {"check": "forward_injective", "L0": pt.L0.serialize()}
                break
            hit[key] = pt
            if key not in pair_index:
                ce = {"check": "forward_lands_in_pairs", "L0": pt.L0.serialize()}
                break
            if pair_index[key].L0 != pt.L0:
                ce = {"check": "roundtrip_identity", "L0": pt.L0.serialize()}
                break
        if not ce and len(hit) != total_pairs:
            ce = {"check": "forward_surjective", "hit": len(hit), "pairs": total_pairs}
    return SuiteReport(
        "theorem-A",
        _params_of(space, k=k, ceiling=ceiling),
        "fail" if ce else "pass",
        counts,
        ce,
        time.time() - t0,
        "stratum-k solutions <-> (Y pair, isotropic complement); Y pairs <-> DL flags",
    )


def suite_theorem_b(space, ceiling=md.DEFAULT_CEILING):
    """Hearts: per-heart bijection with the heart flag variety, equal counts
    across hearts, and the cover of the deepest stratum."""
    t0 = time.time()
    n = space.n
    ce = None
    hearts = md.hearts(space, ceiling)
    counts = {"hearts": len(hearts)}
    per_heart = []
    for h in hearts:
        if ce:
            break
        hp = md.enumerate_heart_points(space, h, ceiling)
        dlh = md.enumerate_dl_heart(space, h, ceiling)
        per_heart.append(len(hp))
        if len(hp) != len(dlh):
            ce = {"check": "heart_vs_flag_count", "heart": h.serialize(),
                  "points": len(hp), "flags": len(dlh)}
            break
        seen = {}
        dl_keys = {f.sort_key() for f in dlh}
        for pt in hp:
            if not md.is_rz_point(space, pt.L0):
                ce = {"check": "heart_point_is_rz", "L0": pt.L0.serialize()}
                break
            f = md.dl_heart_flag(space, pt.L0, h)
            key = f.sort_key()
            if key in seen:
                ce = {"check": "heart_flag_injective", "L0": pt.L0.serialize()}
                break
            if key not in dl_keys:
                ce = {"check": "heart_flag_in_variety", "L0": pt.L0.serialize()}
                break
            seen[key] = pt
        if not ce and len(seen) != len(dl_keys):
            ce = {"check": "heart_flag_surjective", "heart": h.serialize()}
    if not ce and len(set(per_heart)) > 1:
        ce = {"check": "equal_counts_across_hearts", "counts": per_heart}
    counts["per_heart"] = per_heart[0] if per_heart else 0
    # cover of the deepest stratum
    if not ce:
        points = md.enumerate_rz(space, ceiling)
        deep = [pt for pt in points if md.stratum_of(space, pt.L0) == n // 2]
        counts["deepest_stratum"] = len(deep)
        heart_keys = {h.lam0 for h in hearts}
        for pt in deep:
            h = md.heart_of(space, pt.L0)
            if h.lam0 not in heart_keys or not md.is_heart_point(space, pt.L0, h):
                ce = {"check": "deepest_cover", "L0": pt.L0.serialize()}
                break
    return SuiteReport(
        "theorem-B",
        _params_of(space, ceiling=ceiling),
        "fail" if ce else "pass",
        counts,
        ce,
        time.time() - t0,
        "heart solutions <-> heart flags per heart; equal counts; deepest stratum covered",
    )


def suite_beta(space, k, ceiling=md.DEFAULT_CEILING, beta_power=1):
    """Fiber-form properties at every Y point of stratum k.

    beta_power is a test seam (the honest pairing rescales by p^1; passing 0
    reproduces the unrescaled mutant, which must fail).
    """
    t0 = time.time()
    ce = None
    ys = md.enumerate_y(space, k, ceiling)
    counts = {"y": len(ys)}
    field = space.field
    for y in ys:
        fd = md.fiber_data(space, y, k)
        if beta_power == 1:
            beta = fd.beta
        else:
            try:
                gram = []
                for a in fd.reps:
                    row = []
                    for b in fd.reps:
                        val = space.pair_scaled(a, fd.rep_shift, b, fd.rep_shift,
                                                extra=beta_power)
                        row.append(space.ring.residue(val))
                    gram.append(row)
                beta = rs.ResiduePairing(field, gram)
            except Exception as exc:
                # the mutant pairing is not even integral: that is the failure
                ce = {"check": "beta_scale", "error": str(exc), "y": y.serialize()}
                break
        if not beta.is_isotropic(fd.Vk):
            ce = {"check": "vk_isotropic", "y": y.serialize()}
            break
        full = rs.full_subspace(field, fd.dim)
        radical_ok = all(
            not any(beta.value(r1, r2))
            for r1 in fd.V1.rows
            for r2 in full.rows
        )
        if not radical_ok:
            ce = {"check": "v1_left_radical", "y": y.serialize()}
            break
        # induced pairing (Vk/V1) x (V/Vk) must be perfect
        mid = []
        span = fd.V1
        for r in fd.Vk.rows:
            if not rs.member(field, r, span):
                mid.append(r)
                span = rs.sum_spaces(field, span, rs.subspace(field, fd.dim, [r]))
        quot = []
        span = fd.Vk
        for j in range(fd.dim):
            e = tuple(field.one if i == j else field.zero for i in range(fd.dim))
            if not rs.member(field, e, span):
                quot.append(e)
                span = rs.sum_spaces(field, span, rs.subspace(field, fd.dim, [e]))
        mat = [[beta.value(u, w) for w in quot] for u in mid]
        _, piv = rs.rref(field, mat)
        if len(piv) != k - 1:
            ce = {"check": "induced_nondegenerate", "y": y.serialize()}
            break
    return SuiteReport(
        "beta",
        _params_of(space, k=k, ceiling=ceiling),
        "fail" if ce else "pass",
        counts,
        ce,
        time.time() - t0,
        "Vk isotropic; V1 in the left radical; induced middle pairing perfect",
    )


def suite_counts(params, n, j_values, ceiling=md.DEFAULT_CEILING,
                 oracle_cost=DEFAULT_ORACLE_COST, count_fn=None):
    """Count census with oracle cross-checks and the growth sanity band.

    For each stratum k and each j, counts DL flags (pruned), cross-checks
    the naive enumerator whenever its candidate count is below oracle_cost,
    and does the same for RZ solutions where affordable.  DL counts must be
    nondecreasing in j and grow within +-0.5 of the dimension exponent.
    count_fn is a test seam replacing the pruned DL counter.
    """
    t0 = time.time()
    ce = None
    rows = []
    q_of = {}
    for j in j_values:
        ring = make_ring(RingParams(params.p, params.m * j, params.N))
        space = HermitianSpace(ring, n)
        q = space.field.q
        q_of[j] = q
        # per-stratum RZ censuses once per j, where affordable
        rz_strata = None
        rz_strata_naive = None
        pruned_cost = md._submodule_cost(n, q, md._submodule_pairs(n, False))
        naive_rz_cost = md._submodule_cost(n, q, md._submodule_pairs(n, True))
        if pruned_cost <= ceiling:
            rz_strata = {}
            for pt in md.enumerate_rz(space, ceiling):
                kk = md.stratum_of(space, pt.L0)
                rz_strata[kk] = rz_strata.get(kk, 0) + 1
            if naive_rz_cost <= min(ceiling, oracle_cost):
                rz_strata_naive = {}
                for pt in md.enumerate_rz(space, ceiling, naive=True):
                    kk = md.stratum_of(space, pt.L0)
                    rz_strata_naive[kk] = rz_strata_naive.get(kk, 0) + 1
        for k in range(1, n // 2 + 1):
            if count_fn is None:
                dl_count = len(md.enumerate_dl(space, k, ceiling))
            else:
                dl_count = count_fn(space, k)
            naive_cost = rs.gaussian_binomial(n, k - 1, q) * \
                rs.gaussian_binomial(n, n - k, q)
            oracle_count = None
            if naive_cost <= min(ceiling, oracle_cost):
                oracle_count = len(md.enumerate_dl(space, k, ceiling, naive=True))
            rz_count = rz_strata.get(k, 0) if rz_strata is not None else None
            rz_oracle = (
                rz_strata_naive.get(k, 0) if rz_strata_naive is not None else None
            )
            row = {
                "p": params.p, "m": params.m, "n": n, "k": k, "j": j,
                "count": dl_count,
                "oracle_count": oracle_count,
                "match": (oracle_count is None) or (dl_count == oracle_count),
                "rz_count": rz_count,
                "rz_oracle": rz_oracle,
                "rz_match": (rz_oracle is None) or (rz_count == rz_oracle),
            }
            rows.append(row)
            if not row["match"]:
                ce = {"check": "dl_oracle", "row": row}
            elif not row["rz_match"]:
                ce = {"check": "rz_oracle", "row": row}
        if ce:
            break
    # growth band on DL counts across consecutive j
    if not ce:
        js = sorted(j_values)
        for k in range(1, n // 2 + 1):
            series = [(j, r["count"]) for j in js for r in rows
                      if r["j"] == j and r["k"] == k]
            dim = n - k - 1
            for (j1, c1), (j2, c2) in zip(series, series[1:]):
                if c2 < c1:
                    ce = {"check": "monotone_growth", "k": k, "j": (j1, j2)}
                    break
                if c1 == 0:
                    continue
                logq = math.log(q_of[j2]) - math.log(q_of[j1])
                rate = (math.log(c2) - math.log(c1)) / logq
                if not (dim - 0.5 <= rate <= dim + 0.5):
                    ce = {"check": "growth_band", "k": k, "rate": rate, "dim": dim}
                    break
            if ce:
                break
    counts = {"rows": len(rows)}
    report = SuiteReport(
        "counts",
        {"p": params.p, "m": params.m, "N": params.N, "n": n,
         "j_values": list(j_values), "ceiling": ceiling},
        "fail" if ce else "pass",
        counts,
        ce,
        time.time() - t0,
        "pruned vs naive enumerator agreement; monotone counts; growth exponent band",
    )
    report.rows = rows
    return report


SUITE_NAMES = ("duality", "stratification", "theorem-A", "theorem-B", "beta", "counts")


def run_suite(name, params, n, k=None, j=1, seed=0, samples=200,
              ceiling=md.DEFAULT_CEILING, j_values=None):
    """Dispatch a single named suite with a fresh ring/space context."""
    if name == "counts":
        return suite_counts(params, n, j_values or [1], ceiling)
    ring = make_ring(RingParams(params.p, params.m * j, params.N), seed=seed)
    space = HermitianSpace(ring, n)
    if name == "duality":
        return suite_duality(space, samples=samples, seed=seed)
    if name == "stratification":
        return suite_stratification(space, ceiling)
    if name == "theorem-A":
        ks = [k] if k else list(range(1, n // 2 + 1))
        reports = [suite_theorem_a(space, kk, ceiling) for kk in ks]
        return reports if len(reports) > 1 else reports[0]
    if name == "theorem-B":
        return suite_theorem_b(space, ceiling)
    if name == "beta":
        ks = [k] if k else list(range(1, n // 2 + 1))
        reports = [suite_beta(space, kk, ceiling) for kk in ks]
        return reports if len(reports) > 1 else reports[0]
    raise ValueError(f"unknown suite {name!r}")

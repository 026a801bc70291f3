"""Benchmark: compiled kernels vs the pure-Python twin.

Runs the same workloads in two subprocesses (one with WITTLAT_PURE=1) and
prints a comparison table.  Workloads:

  el_mul      tight loop of ring multiplications
  vec_axpy    column operations as used by the normal forms
  duality     200-sample duality suite at (p,m,N,n) = (3,2,6,3)
  enumerate   full RZ enumeration at (p=2, n=3, j=1)

Usage: python benchmarks/bench_kernels.py
"""

import json
import os
import subprocess
import sys
import time


def _worker():
    sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))
    import random

    from wittlat import verify as vf
    from wittlat import moduli as md
    from wittlat.coeff import RingParams, make_ring
    from wittlat.hermitian import HermitianSpace

    results = {}
    ring = make_ring(RingParams(3, 2, 6))
    rng = random.Random(0)
    elems = [
        ring.elem([rng.randrange(ring.modulus) for _ in range(2)]) for _ in range(64)
    ]
    t0 = time.perf_counter()
    acc = ring.one
    for _ in range(200):
        for e in elems:
            acc = ring.mul(acc, e)
    results["el_mul"] = time.perf_counter() - t0

    from wittlat import linalg as la

    W = ring.work
    cols = [
        la.col_from_elems(
            [W.elem([rng.randrange(W.modulus) for _ in range(2)]) for _ in range(6)]
        )
        for _ in range(32)
    ]
    coef = W.elem([3, 5])
    t0 = time.perf_counter()
    dst = cols[0]
    for _ in range(500):
        for c in cols:
            dst = la._axpy(W, dst, c, coef)
    results["vec_axpy"] = time.perf_counter() - t0

    space = HermitianSpace(ring, 3)
    t0 = time.perf_counter()
    rep = vf.suite_duality(space, samples=200, seed=0)
    assert rep.ok
    results["duality"] = time.perf_counter() - t0

    ring2 = make_ring(RingParams(2, 2, 6))
    space2 = HermitianSpace(ring2, 3)
    t0 = time.perf_counter()
    pts = md.enumerate_rz(space2)
    results["enumerate"] = time.perf_counter() - t0
    results["_backend"] = ring.backend
    results["_points"] = len(pts)
    print(json.dumps(results))


def main():
    if "--worker" in sys.argv:
        _worker()
        return
    rows = {}
    for label, env_extra in [("compiled", {}), ("pure", {"WITTLAT_PURE": "1"})]:
        env = dict(os.environ)
        env.pop("WITTLAT_PURE", None)
        env.update(env_extra)
        out = subprocess.run(
            [sys.executable, __file__, "--worker"],
            env=env, capture_output=True, text=True, check=True,
        )
        data = json.loads(out.stdout.strip().splitlines()[-1])
        if data.pop("_backend") != label:
            print(f"note: {label} backend unavailable, measuring fallback")
        data.pop("_points")
        rows[label] = data
    names = sorted(rows["pure"])
    print(f"{'workload':<12} {'pure (s)':>10} {'compiled (s)':>13} {'speedup':>9}")
    for name in names:
        p = rows["pure"][name]
        c = rows["compiled"][name]
        print(f"{name:<12} {p:>10.3f} {c:>13.3f} {p / c:>8.1f}x")


if __name__ == "__main__":
    main()

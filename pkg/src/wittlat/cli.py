"""Command-line surface.

Subcommands:
    enumerate {rz,dl,y,hearts,dl-heart}   write a JSON-lines point stream
    verify {duality,stratification,theorem-A,theorem-B,beta,counts,all}
    table                                  CSV count census over a j-range

Exit codes: 0 success, 1 verification failure (counterexample in the
report), 2 precision/ceiling exhaustion, 3 invalid usage.  Every flag can
also be supplied through the environment as WITTLAT_<NAME>; explicit flags
win over the environment.
"""

import argparse
import json
import os
import sys

from . import __version__
from . import io as wio
from . import moduli as md
from . import verify as vf
from .coeff import RingParams, make_ring
from .errors import CeilingExceeded, ConsistencyError, PrecisionError, UsageError
from .hermitian import HermitianSpace

ENV_PREFIX = "WITTLAT_"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _env_default(name, cast, fallback):
    raw = os.environ.get(ENV_PREFIX + name.upper())
    if raw is None:
        return fallback
    try:
        return cast(raw)
    except ValueError:
        raise UsageError(f"bad value for {ENV_PREFIX}{name.upper()}: {raw!r}")


def _add_common(parser):
    parser.add_argument("--p", type=int, default=None, help="residue characteristic")
    parser.add_argument("--m", type=int, default=None,
                        help="residue degree of the base ring (even; default 2)")
    parser.add_argument("--N", type=int, default=None, help="retained p-adic digits")
    parser.add_argument("--n", type=int, default=None, help="hermitian rank")
    parser.add_argument("--k", type=int, default=None, help="stratum index")
    parser.add_argument("--j", type=int, default=None, help="coefficient field degree")
    parser.add_argument("--seed", type=int, default=None, help="sampler seed")
    parser.add_argument("--ceiling", type=int, default=None,
                        help="candidate-count ceiling for enumerations")
    parser.add_argument("--format", choices=("json", "csv"), default=None)
    parser.add_argument("--cache-dir", default=None)
    parser.add_argument("--out", default=None, help="output file (default stdout)")


class RunConfig:
    def __init__(self, args):
        self.p = args.p if args.p is not None else _env_default("p", int, 2)
        self.m = args.m if args.m is not None else _env_default("m", int, 2)
        self.N = args.N if args.N is not None else _env_default("n_digits", int, 6)
        self.n = args.n if args.n is not None else _env_default("rank", int, 2)
        self.k = args.k
        self.j = args.j if args.j is not None else _env_default("j", int, 1)
        self.seed = args.seed if args.seed is not None else _env_default("seed", int, 0)
        self.ceiling = (
            args.ceiling if args.ceiling is not None
            else _env_default("ceiling", int, md.DEFAULT_CEILING)
        )
        # formats are fixed per artifact (streams: JSON lines, reports: JSON,
        # census: CSV); --format json switches the census only
        self.format = args.format or _env_default("format", str, None)
        self.cache_dir = args.cache_dir or _env_default("cache_dir", str, None)
        self.out = args.out

    def validate_hermitian(self):
        if self.m % 2:
            raise UsageError(f"--m {self.m} must be even for hermitian commands")
        if self.n < 2:
            raise UsageError(f"--n {self.n} must be at least 2")
        if self.k is not None and not 1 <= self.k <= self.n // 2:
            raise UsageError(f"--k {self.k} out of range [1, {self.n // 2}]")
        if self.j < 1:
            raise UsageError(f"--j {self.j} must be at least 1")

    def ring_params(self):
        return RingParams(self.p, self.m, self.N)

    def space(self):
        ring = make_ring(
            RingParams(self.p, self.m * self.j, self.N), seed=self.seed
        )
        return HermitianSpace(ring, self.n)

    def describe(self):
        return {
            "p": self.p, "m": self.m, "N": self.N, "n": self.n,
            "k": self.k, "j": self.j, "seed": self.seed, "ceiling": self.ceiling,
        }


def _emit(config, text):
    if config.out:
        with open(config.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_enumerate(kind, config, heart_index=0):
    config.validate_hermitian()
    params = config.describe()
    params["heart_index"] = heart_index if kind == "dl-heart" else None
    key = wio.cache_key(kind, params, __version__)
    cache = wio.ResultCache(config.cache_dir) if config.cache_dir else None
    if cache:
        hit = cache.get(key)
        if hit is not None:
            _emit(config, hit)
            print(f"cache hit: {cache.path_for(key)}", file=sys.stderr)
            return 0
    space = config.space()
    command = f"enumerate {kind}"
    extra = {"k": config.k, "j": config.j, "seed": config.seed}
    if kind == "rz":
        records = [pt.serialize() for pt in md.enumerate_rz(space, config.ceiling)]
    elif kind == "dl":
        if config.k is None:
            raise UsageError("enumerate dl needs --k")
        records = [f.serialize() for f in md.enumerate_dl(space, config.k, config.ceiling)]
    elif kind == "y":
        if config.k is None:
            raise UsageError("enumerate y needs --k")
        records = [y.serialize() for y in md.enumerate_y(space, config.k, config.ceiling)]
    elif kind == "hearts":
        records = [h.serialize() for h in md.hearts(space, config.ceiling)]
    elif kind == "dl-heart":
        all_hearts = md.hearts(space, config.ceiling)
        if not 0 <= heart_index < len(all_hearts):
            raise UsageError(
                f"--heart-index {heart_index} out of range [0, {len(all_hearts)})"
            )
        extra["heart_index"] = heart_index
        heart = all_hearts[heart_index]
        records = [
            f.serialize() for f in md.enumerate_dl_heart(space, heart, config.ceiling)
        ]
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown enumeration kind {kind!r}")
    header = wio.stream_header(kind, space.ring, config.n, command, __version__, **extra)
    text = wio.render_stream(header, records)
    if cache:
        cache.put(key, text)
    _emit(config, text)
    return 0


def cmd_verify(suite, config, samples, j_max):
    config.validate_hermitian()
    names = list(vf.SUITE_NAMES) if suite == "all" else [suite]
    reports = []
    for name in names:
        if name == "counts":
            j_values = list(range(1, (j_max or 1) + 1))
            rep = vf.suite_counts(config.ring_params(), config.n, j_values,
                                  config.ceiling)
            reports.append(rep)
            continue
        if name == "theorem-B" and config.n % 2:
            continue  # hearts need even rank
        rep = vf.run_suite(
            name, config.ring_params(), config.n, k=config.k, j=config.j,
            seed=config.seed, samples=samples, ceiling=config.ceiling,
        )
        reports.extend(rep if isinstance(rep, list) else [rep])
    payload = {
        "params": config.describe(),
        "version": __version__,
        "suites": [r.serialize() for r in reports],
        "status": "pass" if all(r.ok for r in reports) else "fail",
    }
    _emit(config, json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return 0 if payload["status"] == "pass" else 1


def cmd_table(config, j_max):
    config.validate_hermitian()
    rep = vf.suite_counts(
        config.ring_params(), config.n, list(range(1, j_max + 1)), config.ceiling
    )
    if config.format == "json":
        _emit(config, json.dumps(rep.rows, indent=2, sort_keys=True) + "\n")
    else:
        _emit(config, wio.census_csv(rep.rows))
    return 0 if rep.ok else 1


def build_parser():
    parser = _Parser(prog="wittlat", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_enum = sub.add_parser("enumerate", help="enumerate a point set")
    p_enum.add_argument("kind", choices=("rz", "dl", "y", "hearts", "dl-heart"))
    p_enum.add_argument("--heart-index", type=int, default=0,
                        help="which heart to use for dl-heart (sorted order)")
    _add_common(p_enum)

    p_ver = sub.add_parser("verify", help="run a theorem suite")
    p_ver.add_argument("suite", choices=vf.SUITE_NAMES + ("all",))
    p_ver.add_argument("--samples", type=int, default=200)
    p_ver.add_argument("--j-max", type=int, default=None)
    _add_common(p_ver)

    p_tab = sub.add_parser("table", help="CSV count census")
    p_tab.add_argument("--j-max", type=int, default=1)
    _add_common(p_tab)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        config = RunConfig(args)
        if args.command == "enumerate":
            return cmd_enumerate(args.kind, config, heart_index=args.heart_index)
        if args.command == "verify":
            return cmd_verify(args.suite, config, args.samples, args.j_max)
        if args.command == "table":
            return cmd_table(config, args.j_max)
        raise UsageError(f"unknown command {args.command!r}")
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 3
    except (PrecisionError, CeilingExceeded) as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return 2
    except ConsistencyError as exc:
        print(f"consistency failure: {exc}", file=sys.stderr)
        if exc.counterexample is not None:
            print(wio.canonical_json(exc.counterexample), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

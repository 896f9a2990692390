"""Command-line entry point: ``prohd gen | hd | bench``.

Exit codes: 0 success, 2 usage error, 3 data error, 4 internal invariant
violation. ``PROHD_NUM_THREADS`` sets the default thread count and
``--threads`` overrides it.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import math
import sys
import time

from ._accel import backend_name, threads
from .baselines import SampleSpec, random_sampling_hd, systematic_sampling_hd
from .cloudio import read_cloud, write_cloud
from .errors import (
    CloudFormatError,
    DatasetError,
    DimensionMismatchError,
    InvalidCloudError,
    InvariantViolation,
)
from .estimator import MODES, ProHdConfig, proj_hausdorff
from .harness import emit_results, generate_random_clouds, load_sweep, relative_error, run_sweep
from .index import hausdorff_via_index

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_INVARIANT = 0, 2, 3, 4


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="prohd", description="Exact and approximate Hausdorff distances.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a pair of uniform random clouds")
    g.add_argument("--n-a", type=int, required=True)
    g.add_argument("--n-b", type=int, required=True)
    g.add_argument("--dim", type=int, required=True)
    g.add_argument("--offset", type=float, default=0.1)
    g.add_argument("--shift", choices=("b", "both"), default="b", help="which cloud(s) the offset moves")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out-a", required=True)
    g.add_argument("--out-b", required=True)
    g.add_argument("--format", choices=("bin", "csv"), default=None, help="default: from file suffix")
    g.add_argument("--dtype", choices=("f32", "f64"), default="f64")

    h = sub.add_parser("hd", help="Hausdorff distance between two point files")
    h.add_argument("--method", choices=("exact", "prohd", "random", "systematic"), default="prohd")
    h.add_argument("--a", required=True)
    h.add_argument("--b", required=True)
    h.add_argument("--alpha", type=float, default=0.01)
    h.add_argument("--mode", choices=MODES, default="subset-subset")
    h.add_argument("--seed", type=int, default=0)
    h.add_argument("--threads", type=int, default=None)
    h.add_argument("--with-exact", action="store_true", help="also compute the exact distance and the error")
    h.add_argument("--json", action="store_true")

    b = sub.add_parser("bench", help="run a sweep described by a JSON config")
    b.add_argument("--config", required=True)
    b.add_argument("--out", required=True)
    b.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    b.add_argument("--threads", type=int, default=None)
    return p


def _cmd_gen(args) -> dict:
    a, b = generate_random_clouds(args.n_a, args.n_b, args.dim, args.offset, args.seed, args.shift)
    fa = write_cloud(a, args.out_a, args.format, args.dtype)
    fb = write_cloud(b, args.out_b, args.format, args.dtype)
    print(f"wrote {fa.path} ({fa.n}x{fa.dim} {fa.format}/{fa.dtype}) and {fb.path} ({fb.n}x{fb.dim})")
    return {}


def _cmd_hd(args) -> dict:
    a, b = read_cloud(args.a), read_cloud(args.b)
    if a.dim != b.dim:
        raise DimensionMismatchError(f"{args.a} has dimension {a.dim}, {args.b} has {b.dim}")
    out = {"method": args.method, "backend": backend_name(), "n_a": a.n, "n_b": b.n, "dim": a.dim}
    with threads(args.threads) as nthreads:
        out["threads"] = nthreads
        t = time.perf_counter()
        if args.method == "exact":
            res = hausdorff_via_index(a, b)
            out.update(estimate=res.value, size_a=a.n, size_b=b.n)
        elif args.method == "prohd":
            rep = proj_hausdorff(a, b, ProHdConfig(args.alpha, args.mode, seed=args.seed))
            if not rep.estimate <= rep.bound_upper:
                raise InvariantViolation("estimate exceeds its own upper bound")
            out.update(
                estimate=rep.estimate,
                bound_upper=rep.bound_upper,
                min_delta=rep.min_delta,
                size_a=rep.size_a,
                size_b=rep.size_b,
                mode=rep.mode,
                timings=rep.timings,
            )
        elif args.method == "random":
            est = random_sampling_hd(a, b, SampleSpec(args.alpha, args.seed, "uniform"))
            out.update(estimate=est.estimate, size_a=est.size_a, size_b=est.size_b)
        else:
            est = systematic_sampling_hd(a, b, SampleSpec(args.alpha, args.seed, "systematic"))
            out.update(estimate=est.estimate, size_a=est.size_a, size_b=est.size_b)
        out["wall_time_s"] = time.perf_counter() - t
        if args.with_exact:
            exact = out["estimate"] if args.method == "exact" else hausdorff_via_index(a, b).value
            err = relative_error(out["estimate"], exact)
            out.update(exact=exact, relative_error_percent=None if math.isnan(err) else err)

    if args.json:
        print(json.dumps(out))
    else:
        for key, val in out.items():
            if isinstance(val, dict):
                val = ", ".join(f"{k}={v:.6f}s" for k, v in val.items())
            elif isinstance(val, float):
                val = format(val, ".17g")
            print(f"{key}: {val}")
    return out


def _cmd_bench(args) -> dict:
    configs = load_sweep(args.config)
    if args.threads is not None:
        configs = [dataclasses.replace(c, threads=args.threads) for c in configs]
    records = run_sweep(configs)
    path = emit_results(records, args.out, args.format)
    print(f"wrote {len(records)} records to {path}")
    return {}


def main(argv: list[str] | None = None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    handler = {"gen": _cmd_gen, "hd": _cmd_hd, "bench": _cmd_bench}[args.command]
    try:
        handler(args)
    except InvariantViolation as exc:
        print(f"prohd: invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (CloudFormatError, InvalidCloudError, DimensionMismatchError, DatasetError, OSError) as exc:
        print(f"prohd: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"prohd: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

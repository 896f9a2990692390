"""Compare the numba kernels against their pure-numpy twins.

    python3 benchmarks/bench_backends.py --n 20000 --dim 8 --repeat 3

Both backends return bit-identical results; the script checks that before
printing timings.
"""

import argparse
import statistics
import time

import numpy as np

from prohd import _kernels
from prohd._accel import USE_NUMBA, threads


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return out, min(times), statistics.median(times)


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, default=20_000, help="points per cloud")
    p.add_argument("--dim", type=int, default=8)
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)

    if not USE_NUMBA:
        raise SystemExit("numba backend unavailable (not installed or PROHD_DISABLE_NUMBA set)")

    rng = np.random.default_rng(args.seed)
    q = rng.random((args.n, args.dim))
    data = rng.random((args.n, args.dim)) + 0.1

    cases = [
        ("nearest_sq", _kernels.nearest_sq_nb, _kernels.nearest_sq_np),
        ("directed_max_sq", _kernels.directed_max_sq_nb, _kernels.directed_max_sq_np),
    ]
    with threads(args.threads) as nthreads:
        _kernels.nearest_sq_nb(q[:64], data[:64])  # compile outside the timed region
        _kernels.directed_max_sq_nb(q[:64], data[:64])
        print(f"n={args.n} dim={args.dim} threads={nthreads} repeat={args.repeat}")
        print(f"{'kernel':<16} {'numba min':>10} {'numpy min':>10} {'speedup':>8}")
        for name, nb, npy in cases:
            r_nb, t_nb, _ = best_of(lambda: nb(q, data), args.repeat)
            r_np, t_np, _ = best_of(lambda: npy(q, data), args.repeat)
            if isinstance(r_nb, tuple) and isinstance(r_nb[0], np.ndarray):
                same = all(np.array_equal(x, y) for x, y in zip(r_nb, r_np))
            else:
                same = r_nb == r_np
            if not same:
                raise SystemExit(f"{name}: backends disagree")
            print(f"{name:<16} {t_nb:>9.3f}s {t_np:>9.3f}s {t_np / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()

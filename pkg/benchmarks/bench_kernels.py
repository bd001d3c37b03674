#!/usr/bin/env python3
"""Benchmark the jitted kernels against the pure-numpy fallbacks.

Run twice to let numba's on-disk cache absorb compilation cost, or pass
--repeat to average.  RLAB_BACKEND only affects the library dispatch; this
script calls both implementations directly.
"""

import argparse
import time

import numpy as np

from rlab import kernels
from rlab.ramanujan import csum_period


def timeit(fn, *args, repeat=3):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--x", type=int, default=2 * 10 ** 6,
                    help="length of the averaging ranges")
    ap.add_argument("--n", type=int, default=4096, help="correlation length")
    ap.add_argument("--amax", type=int, default=4096, help="correlation shifts")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    if not kernels.HAVE_NUMBA:
        print("numba not available (or RLAB_BACKEND=numpy): timing numpy only")

    print(f"{'kernel':<28}{'numba (s)':>12}{'numpy (s)':>12}{'speedup':>10}")
    rng = np.random.default_rng(1)

    cq = csum_period(17).copy()
    cl = csum_period(12).copy()
    rows = []
    if kernels.HAVE_NUMBA:
        kernels._cross_sum_nb(cq, cl, 3, 10)   # warm the jit
    t_np, ref = timeit(kernels._cross_sum_np, cq, cl, 3, args.x,
                       repeat=args.repeat)
    if kernels.HAVE_NUMBA:
        t_nb, got = timeit(kernels._cross_sum_nb, cq, cl, 3, args.x,
                           repeat=args.repeat)
        assert got == ref
    else:
        t_nb = float("nan")
    rows.append(("cross_sum", t_nb, t_np))

    w = rng.integers(-50, 50, size=args.x)
    tab = csum_period(30).copy()
    if kernels.HAVE_NUMBA:
        kernels._weighted_periodic_int_nb(w, tab, 10)
        t_nb, got = timeit(kernels._weighted_periodic_int_nb, w, tab, args.x,
                           repeat=args.repeat)
    t_np, ref = timeit(kernels._weighted_periodic_int_np, w, tab, args.x,
                       repeat=args.repeat)
    if kernels.HAVE_NUMBA:
        assert got == ref
    else:
        t_nb = float("nan")
    rows.append(("weighted_periodic_int", t_nb, t_np))

    f = rng.integers(-9, 9, size=args.n)
    g = rng.integers(-9, 9, size=args.n + args.amax)
    if kernels.HAVE_NUMBA:
        kernels._correlate_int_nb(f, g, 4)
        t_nb, got = timeit(kernels._correlate_int_nb, f, g, args.amax,
                           repeat=args.repeat)
    t_np, ref = timeit(kernels._correlate_int_np, f, g, args.amax,
                       repeat=args.repeat)
    if kernels.HAVE_NUMBA:
        assert np.array_equal(got, ref)
    else:
        t_nb = float("nan")
    rows.append(("correlate_int", t_nb, t_np))

    c = rng.integers(-99, 99, size=args.x + 1)
    c[0] = 0
    mu = kernels.mobius_sieve(args.x).copy()
    if kernels.HAVE_NUMBA:
        kernels._mobius_transform_nb(c[:100], mu[:100])
        t_nb, got = timeit(kernels._mobius_transform_nb, c, mu,
                           repeat=args.repeat)
    t_np, ref = timeit(kernels._mobius_transform_np, c, mu, repeat=args.repeat)
    if kernels.HAVE_NUMBA:
        assert np.array_equal(got, ref)
    else:
        t_nb = float("nan")
    rows.append(("mobius_transform", t_nb, t_np))

    for name, t_nb, t_np in rows:
        speed = f"{t_np / t_nb:9.1f}x" if t_nb == t_nb else "       n/a"
        nb_txt = f"{t_nb:12.4f}" if t_nb == t_nb else "         n/a"
        print(f"{name:<28}{nb_txt}{t_np:12.4f}{speed}")


if __name__ == "__main__":
    main()

"""Benchmark the compiled sweep kernel against the numpy fallback.

Times sep_xi_max on random two-qubit separable ensembles for each backend
and prints per-state throughput.  Run from the repository root:

    python3 benchmarks/bench_kernels.py --n 200000 --terms 4
"""

import argparse
import time

import numpy as np

from dstrength import _kernels_py

try:
    from dstrength import _kernels as _compiled
except ImportError:
    _compiled = None


def make_batch(n, terms, seed):
    rng = np.random.default_rng(seed)
    w = rng.dirichlet(np.ones(terms), size=n)
    u = rng.standard_normal((n, terms, 3))
    u /= np.linalg.norm(u, axis=2, keepdims=True)
    v = rng.standard_normal((n, terms, 3))
    v /= np.linalg.norm(v, axis=2, keepdims=True)
    return w, u, v


def time_backend(fn, args, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=200_000)
    parser.add_argument("--terms", type=int, default=4)
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    batch = make_batch(args.n, args.terms, args.seed)
    print(f"{args.n} ensembles of {args.terms} terms, best of {args.repeats} runs")

    t_py, out_py = time_backend(_kernels_py.sep_xi_max, batch, args.repeats)
    print(f"python : {t_py:8.3f} s  ({1e6 * t_py / args.n:7.2f} us/state)")

    if _compiled is None:
        print("cython : not built (pip install -e . --no-build-isolation)")
        return

    t_cy, out_cy = time_backend(_compiled.sep_xi_max, batch, args.repeats)
    print(f"cython : {t_cy:8.3f} s  ({1e6 * t_cy / args.n:7.2f} us/state)")
    print(f"speedup: {t_py / t_cy:.1f}x   max |diff| = {np.max(np.abs(out_py - out_cy)):.2e}")


if __name__ == "__main__":
    main()

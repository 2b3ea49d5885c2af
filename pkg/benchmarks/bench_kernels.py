"""Compare the compiled kernels with the pure-Python fallback.

Usage: python benchmarks/bench_kernels.py [--repeat R] [--census-n N]
"""

import argparse
import random
import sys
import time

import numpy as np

from hermspec import _pykernels
from hermspec.oracle import random_mixed_graph
from hermspec.spectral import graph_parts

try:
    from hermspec import _ckernels
except ImportError:
    _ckernels = None


def best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def cases(census_n: int):
    rng = random.Random(0)
    mats = [graph_parts(random_mixed_graph(10, rng)) for _ in range(200)]
    sym = np.random.default_rng(0).standard_normal((40, 40))
    sym = (sym + sym.T) / 2
    total = 4 ** (census_n * (census_n - 1) // 2)
    stop = min(total, 50_000)
    return [
        ("charpoly x200 (n=10)", lambda k: [k.charpoly(re, im) for re, im in mats]),
        ("rank x200 (n=10)", lambda k: [k.rank(re, im) for re, im in mats]),
        (f"census charpolys n={census_n} [0,{stop})", lambda k: k.census_charpolys(census_n, 0, stop)),
        ("jacobi 40x40", lambda k: k.jacobi_sweeps(sym.copy(), 1e-12, 100)),
    ]


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--census-n", type=int, default=5)
    args = p.parse_args(argv)
    if _ckernels is None:
        print("compiled kernels not built; only the Python timings are shown", file=sys.stderr)
    print(f"{'kernel':<36} {'python [s]':>11} {'compiled [s]':>13} {'speedup':>8}")
    for name, fn in cases(args.census_n):
        tp = best_of(lambda: fn(_pykernels), args.repeat)
        if _ckernels is None:
            print(f"{name:<36} {tp:>11.4f} {'-':>13} {'-':>8}")
            continue
        tc = best_of(lambda: fn(_ckernels), args.repeat)
        print(f"{name:<36} {tp:>11.4f} {tc:>13.4f} {tp / tc:>7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

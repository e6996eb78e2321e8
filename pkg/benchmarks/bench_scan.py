#!/usr/bin/env python3
"""Benchmark the compiled scan kernel against the pure-Python twin.

Runs the per-point channel evaluation over an n x n (theta, p) grid with
each available backend, checks the outputs agree bit for bit, and prints
throughput. Use --points to change the grid edge, --jobs to exercise
threaded chunking (the compiled kernel releases the GIL, so threads only
help there).
"""

import argparse
import math
import time

import numpy as np

from spinsqueeze.scan import available_backends, evaluate_points, scan_backend


def build_grid(points: int):
    p = np.linspace(0.0, 1.0, points)
    theta = np.linspace(0.0, math.pi, points + 2)[1:-1]
    pg, tg = np.meshgrid(p, theta, indexing="ij")
    n = pg.size
    return pg.ravel(), pg.ravel(), tg.ravel(), np.zeros(n)


def bench(backend: str, args_tuple, jobs: int, repeats: int):
    best = math.inf
    out = None
    for _ in range(repeats):
        start = time.perf_counter()
        out = evaluate_points(*args_tuple, jobs=jobs, backend=backend)
        best = min(best, time.perf_counter() - start)
    return best, out


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--points", type=int, default=400, help="grid edge length")
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    grid = build_grid(args.points)
    n = grid[0].size
    print(f"grid: {args.points} x {args.points} = {n} points, "
          f"jobs={args.jobs}, default backend: {scan_backend()}")

    results = {}
    for name in sorted(available_backends()):
        elapsed, out = bench(name, grid, args.jobs, args.repeats)
        results[name] = (elapsed, out)
        print(f"  {name:7s} {elapsed * 1e3:9.2f} ms   "
              f"{n / elapsed / 1e6:8.2f} Mpoints/s")

    names = sorted(results)
    if len(names) == 2:
        (t0, o0), (t1, o1) = results[names[0]], results[names[1]]
        identical = np.array_equal(o0, o1, equal_nan=True)
        slow, fast = max(t0, t1), min(t0, t1)
        print(f"  outputs bit-identical: {identical}")
        print(f"  speedup: {slow / fast:.1f}x")
        if not identical:
            raise SystemExit("backend outputs diverged")


if __name__ == "__main__":
    main()

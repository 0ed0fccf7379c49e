#!/usr/bin/env python3
"""Benchmark the compiled kernel backend against the pure-Python fallback.

Usage: python benchmarks/bench_kernels.py [--grids N] [--side W]

Times the hot kernels on random grids and prints per-op medians plus the
speedup. Useful when judging whether a build without the extension is
acceptable for a large generation run.
"""

from __future__ import annotations

import argparse
import random
import statistics
import time

from arcsmith import _purekernels

try:
    from arcsmith import _fastkernels
except ImportError:
    _fastkernels = None


def make_grids(n, side, seed=0):
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        w, h = rng.randint(side // 2, side), rng.randint(side // 2, side)
        out.append((bytes(rng.randrange(5) for _ in range(w * h)), w, h))
    return out


def bench(fn, repeat=5):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--grids", type=int, default=60)
    parser.add_argument("--side", type=int, default=30)
    args = parser.parse_args()

    grids = make_grids(args.grids, args.side)
    ig = bytes([1] + [0] * 9)

    ops = {
        "label_components": lambda mod: [
            mod.label_components(c, w, h, 0, 8, True) for c, w, h in grids
        ],
        "flood_fill": lambda mod: [
            mod.flood_fill(c, w, h, 0, 0, 7, 4) for c, w, h in grids
        ],
        "translation_search": lambda mod: [
            mod.translation_search(c, w, h, ig) for c, w, h in grids
        ],
        "mirror_search": lambda mod: [
            mod.mirror_search(c, w, h, ig, 0) for c, w, h in grids
        ],
        "rotation_search": lambda mod: [
            mod.rotation_search(c, w, h, ig) for c, w, h in grids
        ],
    }

    print(f"{args.grids} random grids up to {args.side}x{args.side}\n")
    print(f"{'op':<20} {'python':>10} {'compiled':>10} {'speedup':>9}")
    for name, op in ops.items():
        py = bench(lambda: op(_purekernels))
        if _fastkernels is None:
            print(f"{name:<20} {py * 1000:>8.1f}ms {'absent':>10} {'-':>9}")
            continue
        fast = bench(lambda: op(_fastkernels))
        print(f"{name:<20} {py * 1000:>8.1f}ms {fast * 1000:>8.1f}ms {py / fast:>8.1f}x")


if __name__ == "__main__":
    main()

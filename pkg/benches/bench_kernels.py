"""Benchmark the compiled kernels against the pure-numpy reference.

Times the two hot paths (rasterization and chamfer nearest-neighbor sweeps)
on every available backend and prints a speedup table. Run from a checkout:

    python3 benches/bench_kernels.py
    python3 benches/bench_kernels.py --sizes 256,512,1024 --repeats 5
"""
from __future__ import annotations

import argparse
import random
import time

import numpy as np

from draftkit import _kernels
from draftkit.fixtures import random_sketch
from draftkit.metrics import chamfer
from draftkit.raster import render, sample_points


def best_of(repeats: int, fn) -> float:
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def bench_render(backends, sizes, repeats, rng):
    sketch = random_sketch(rng, 16, 16)
    rows = []
    for size in sizes:
        timings = {
            name: best_of(repeats, lambda n=name: render(sketch, size, size, backend=n))
            for name in backends
        }
        rows.append((f"render {size}x{size}", timings))
    return rows


def bench_chamfer(backends, point_counts, repeats, rng):
    rows = []
    for count in point_counts:
        per_prim = max(2, count // 16)
        a = sample_points(random_sketch(rng, 16, 16), per_primitive=per_prim)
        b = sample_points(random_sketch(rng, 16, 16), per_primitive=per_prim)
        timings = {
            name: best_of(repeats, lambda n=name: chamfer(a, b, backend=n))
            for name in backends
        }
        rows.append((f"chamfer {len(a)}x{len(b)} pts", timings))
    return rows


def verify_parity(backends, rng) -> None:
    if len(backends) < 2:
        return
    sketch = random_sketch(rng, 12, 12)
    images = {name: render(sketch, 256, 256, backend=name).pixels for name in backends}
    base = images[backends[0]]
    for name in backends[1:]:
        assert np.array_equal(base, images[name]), f"render parity broken for {name}"
    a = sample_points(sketch, per_primitive=50)
    values = [chamfer(a, a, backend=name) for name in backends]
    assert all(v == 0.0 for v in values), "chamfer self-distance must be zero"


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="256,512", help="comma-separated render sizes")
    parser.add_argument("--points", default="1000,4000", help="comma-separated chamfer set sizes")
    parser.add_argument("--repeats", type=int, default=3, help="take the best of N runs")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    backends = list(_kernels.available_backends())
    rng = random.Random(args.seed)
    print(f"backends: {', '.join(backends)} (active: {_kernels.backend_name()})")
    verify_parity(backends, rng)

    sizes = [int(s) for s in args.sizes.split(",")]
    points = [int(s) for s in args.points.split(",")]
    rows = bench_render(backends, sizes, args.repeats, rng)
    rows += bench_chamfer(backends, points, args.repeats, rng)

    name_w = max(len(r[0]) for r in rows)
    header = f"{'case':<{name_w}}" + "".join(f"  {b:>12}" for b in backends)
    if len(backends) > 1:
        header += f"  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for label, timings in rows:
        line = f"{label:<{name_w}}"
        for b in backends:
            line += f"  {timings[b] * 1e3:>10.2f}ms"
        if len(backends) > 1:
            line += f"  {timings['reference'] / timings['native']:>7.1f}x"
        print(line)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

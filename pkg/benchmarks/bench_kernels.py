#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Runs each hot kernel on representative workloads and prints a timing table.
The numba path is what TRIFOCAL_PURE_NUMPY=0 (default) selects; the numpy
column is the fallback used when the flag is set or numba is unavailable.
"""

import time

import numpy as np

from trifocal import accel, kernels

REPEATS = 5


def _best(fn, *args):
    best = float("inf")
    result = None
    for _ in range(REPEATS):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    if not accel.NUMBA_ENABLED:
        raise SystemExit(
            "numba path is disabled (TRIFOCAL_PURE_NUMPY set or numba missing); "
            "nothing to compare"
        )

    rng = np.random.default_rng(12345)
    fx = rng.uniform(-1, 1, 3)
    fy = rng.uniform(-1, 1, 3)
    w = rng.uniform(0.5, 2.0, 3)
    p, corr = 2.0, 1.0
    s = 4.0

    grid_n = 1024
    xs = np.linspace(-3, 3, grid_n + 1)
    ys = np.linspace(-3, 3, grid_n + 1)

    n_edges = 20_000
    theta = rng.uniform(0, 2 * np.pi, n_edges)
    ax = np.full(n_edges, fx.mean())
    ay = np.full(n_edges, fy.mean())
    bx = ax + 60.0 * np.cos(theta)
    by = ay + 60.0 * np.sin(theta)

    n_mc = 2_000_000
    px = rng.uniform(-3, 3, n_mc)
    py = rng.uniform(-3, 3, n_mc)

    print("warming up JIT compilation (cached after first run)...")
    t0 = time.perf_counter()
    kernels.field_grid_numba(xs[:8], ys[:8], fx, fy, w, p, corr)
    kernels.refine_crossings_numba(ax[:8], ay[:8], bx[:8], by[:8], fx, fy, w, p, corr, s, 1e-12)
    vals_small = kernels.field_grid_numba(xs[:32], ys[:32], fx, fy, w, p, corr)
    kernels.area_fractions_numba(vals_small, xs[:32], ys[:32], s, fx, fy, w, p, corr)
    kernels.polyline_length_numba(xs, ys, True)
    kernels.count_at_or_below_numba(px[:8], py[:8], fx, fy, w, p, corr, s)
    print(f"warmup: {time.perf_counter() - t0:.2f} s\n")

    vals = kernels.field_grid_numpy(xs, ys, fx, fy, w, p, corr)
    cases = [
        (
            f"field_grid {grid_n + 1}^2",
            kernels.field_grid_numba,
            kernels.field_grid_numpy,
            (xs, ys, fx, fy, w, p, corr),
        ),
        (
            f"refine_crossings {n_edges}",
            kernels.refine_crossings_numba,
            kernels.refine_crossings_numpy,
            (ax, ay, bx, by, fx, fy, w, p, corr, s, 1e-12),
        ),
        (
            f"area_fractions {grid_n}^2",
            kernels.area_fractions_numba,
            kernels.area_fractions_numpy,
            (vals, xs, ys, s, fx, fy, w, p, corr),
        ),
        (
            f"count_at_or_below {n_mc}",
            kernels.count_at_or_below_numba,
            kernels.count_at_or_below_numpy,
            (px, py, fx, fy, w, p, corr, s),
        ),
    ]

    print(f"{'kernel':<28} {'numba (s)':>10} {'numpy (s)':>10} {'speedup':>8} {'match':>6}")
    print("-" * 68)
    for name, fn_nb, fn_np, args in cases:
        t_nb, r_nb = _best(fn_nb, *args)
        t_np, r_np = _best(fn_np, *args)
        if isinstance(r_nb, tuple):
            match = all(np.array_equal(a, b) for a, b in zip(r_nb, r_np))
        else:
            match = np.array_equal(r_nb, r_np)
        print(f"{name:<28} {t_nb:>10.4f} {t_np:>10.4f} {t_np / t_nb:>7.1f}x {'ok' if match else 'DIFF':>6}")


if __name__ == "__main__":
    main()

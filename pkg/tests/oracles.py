"""Independent oracles used to validate the library.

These deliberately re-derive quantities from first principles (central
differences, Monte-Carlo counting, ray casting, shoelace) with their own
formulas, so they share no code path with the implementations they check.
"""

from __future__ import annotations

import math

import numpy as np


def central_difference_gradient(fn, x: float, y: float, h: float = 1e-6):
    """Two-sided difference quotient of a scalar field of two variables."""
    gx = (fn(x + h, y) - fn(x - h, y)) / (2.0 * h)
    gy = (fn(x, y + h) - fn(x, y - h)) / (2.0 * h)
    return gx, gy


def brute_objective(xs, ys, foci_xy, weights, p=2.0, corr=1.0):
    """Vectorized weighted Minkowski sum written independently of the
    package kernels (uses np.hypot / np.power)."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    total = np.zeros(np.broadcast(xs, ys).shape)
    for (fx, fy), w in zip(foci_xy, weights):
        ax = np.abs(xs - fx)
        ay = np.abs(ys - fy)
        if p == 2.0:
            d = np.hypot(ax, ay)
        elif p == 1.0:
            d = ax + ay
        else:
            d = np.power(np.power(ax, p) + np.power(ay, p), 1.0 / p)
        total = total + w * corr * d
    return total


def monte_carlo_area(foci_xy, weights, s, bounds, n_samples, seed, p=2.0, corr=1.0):
    """Hit-or-miss area estimate of {f <= s} within bounds.

    Returns (estimate, standard_error).  bounds = (x0, y0, x1, y1) and must
    contain the region for the estimate to mean anything.
    """
    x0, y0, x1, y1 = bounds
    rng = np.random.default_rng(seed)
    hits = 0
    remaining = int(n_samples)
    while remaining > 0:
        m = min(1_000_000, remaining)
        xs = rng.uniform(x0, x1, m)
        ys = rng.uniform(y0, y1, m)
        f = brute_objective(xs, ys, foci_xy, weights, p, corr)
        hits += int(np.count_nonzero(f <= s))
        remaining -= m
    box_area = (x1 - x0) * (y1 - y0)
    phat = hits / n_samples
    estimate = box_area * phat
    stderr = box_area * math.sqrt(max(phat * (1.0 - phat), 0.0) / n_samples)
    return estimate, stderr


def point_in_polygon(x: float, y: float, polygon) -> bool:
    """Even-odd ray casting against a closed polygon given as an (n, 2) array."""
    inside = False
    n = len(polygon)
    for i in range(n):
        x1, y1 = polygon[i]
        x2, y2 = polygon[(i + 1) % n]
        if (y1 > y) != (y2 > y):
            t = (y - y1) / (y2 - y1)
            if x < x1 + t * (x2 - x1):
                inside = not inside
    return inside


def shoelace_area(polygon) -> float:
    """Absolute area of a closed polygon given as an (n, 2) array."""
    arr = np.asarray(polygon, dtype=float)
    x = arr[:, 0]
    y = arr[:, 1]
    return 0.5 * abs(float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y)))


def random_triangle(rng, low=0.0, high=1.0, min_side=1e-3):
    """Three points uniform in a square, rejecting near-degenerate triples."""
    while True:
        pts = rng.uniform(low, high, size=(3, 2))
        d01 = np.hypot(*(pts[0] - pts[1]))
        d12 = np.hypot(*(pts[1] - pts[2]))
        d20 = np.hypot(*(pts[2] - pts[0]))
        if min(d01, d12, d20) < min_side:
            continue
        cross = (pts[1] - pts[0])[0] * (pts[2] - pts[0])[1] - (pts[1] - pts[0])[1] * (
            pts[2] - pts[0]
        )[0]
        if abs(cross) < min_side:
            continue
        return pts


def triangle_with_obtuse_vertex(rng, min_angle_deg=120.0 + 1e-6, max_angle_deg=176.0):
    """Triangle with a >= 120-degree angle at a random vertex index.

    Returns (points, index): the wide angle sits at points[index].
    """
    gamma = math.radians(rng.uniform(min_angle_deg, max_angle_deg))
    base = rng.uniform(0.0, 2.0 * math.pi)
    r1 = rng.uniform(0.2, 5.0)
    r2 = rng.uniform(0.2, 5.0)
    apex = rng.uniform(-10.0, 10.0, size=2)
    p1 = apex + r1 * np.array([math.cos(base), math.sin(base)])
    p2 = apex + r2 * np.array([math.cos(base + gamma), math.sin(base + gamma)])
    idx = rng.integers(0, 3)
    pts = [None, None, None]
    pts[idx] = apex
    others = [i for i in range(3) if i != idx]
    pts[others[0]] = p1
    pts[others[1]] = p2
    return np.array(pts), int(idx)

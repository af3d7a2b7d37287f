"""Hot numeric kernels: grid sampling, crossing refinement, fractional-cell
area accumulation, Monte-Carlo style counting.

Each kernel exists twice: a scalar-loop version compiled with numba when
available, and a vectorized numpy fallback.  Both perform the same
floating-point operations in the same per-element order, so for p in {1, 2}
the two paths agree bit for bit (general p may differ by an ulp through the
pow intrinsic).  `trifocal.accel` decides which path backs the public names.
"""

from __future__ import annotations

import numpy as np

from .accel import NUMBA_ENABLED, njit, prange

_BISECT_MAX_ITER = 128


def _maybe_njit(fn):
    if NUMBA_ENABLED:
        return njit(cache=True)(fn)
    return fn


@_maybe_njit
def _minkowski(dx: float, dy: float, p: float) -> float:
    if p == 2.0:
        return np.sqrt(dx * dx + dy * dy)
    if p == 1.0:
        return abs(dx) + abs(dy)
    return (abs(dx) ** p + abs(dy) ** p) ** (1.0 / p)


@_maybe_njit
def objective_at(x, y, fx, fy, w, p, corr):
    """Weighted corrected objective at a single point; fx/fy/w are length-3 arrays."""
    total = 0.0
    for i in range(fx.shape[0]):
        d = _minkowski(x - fx[i], y - fy[i], p)
        total += w[i] * (corr * d)
    return total


@_maybe_njit
def _cell_fraction(v0, v1, v2, v3, vc, s):
    """Fraction of a unit grid cell covered by {f <= s}.

    v0..v3 are the corner samples (bottom-left, bottom-right, top-right,
    top-left); vc is the cell-center sample, consulted only for the two
    diagonal (saddle) sign patterns.  Boundary crossings use linear
    interpolation along cell edges.
    """
    b0 = v0 <= s
    b1 = v1 <= s
    b2 = v2 <= s
    b3 = v3 <= s
    n_in = int(b0) + int(b1) + int(b2) + int(b3)
    if n_in == 4:
        return 1.0
    if n_in == 0:
        return 0.0

    if n_in == 2 and b0 == b2 and b1 == b3:
        # Diagonal pattern: center decides band vs two detached lobes.
        if vc > s:
            if b0:
                tb = (v0 - s) / (v0 - v1)
                tl = (v0 - s) / (v0 - v3)
                tr = (v2 - s) / (v2 - v1)
                tt = (v2 - s) / (v2 - v3)
            else:
                tb = (v1 - s) / (v1 - v0)
                tl = (v1 - s) / (v1 - v2)
                tr = (v3 - s) / (v3 - v2)
                tt = (v3 - s) / (v3 - v0)
            return 0.5 * (tb * tl + tr * tt)
        # center inside: fall through to the connected boundary walk

    cx = np.empty(8)
    cy = np.empty(8)
    corner_x = (0.0, 1.0, 1.0, 0.0)
    corner_y = (0.0, 0.0, 1.0, 1.0)
    vals = (v0, v1, v2, v3)
    flags = (b0, b1, b2, b3)
    n = 0
    for i in range(4):
        j = (i + 1) % 4
        if flags[i]:
            cx[n] = corner_x[i]
            cy[n] = corner_y[i]
            n += 1
        if flags[i] != flags[j]:
            t = (vals[i] - s) / (vals[i] - vals[j])
            if t < 0.0:
                t = 0.0
            elif t > 1.0:
                t = 1.0
            cx[n] = corner_x[i] + t * (corner_x[j] - corner_x[i])
            cy[n] = corner_y[i] + t * (corner_y[j] - corner_y[i])
            n += 1

    area2 = 0.0
    for i in range(n):
        j = (i + 1) % n
        area2 += cx[i] * cy[j] - cx[j] * cy[i]
    return abs(area2) * 0.5


def _field_grid_loops(xs, ys, fx, fy, w, p, corr):
    out = np.empty((ys.shape[0], xs.shape[0]))
    for iy in prange(ys.shape[0]):
        y = ys[iy]
        for ix in range(xs.shape[0]):
            out[iy, ix] = objective_at(xs[ix], y, fx, fy, w, p, corr)
    return out


def field_grid_numpy(xs, ys, fx, fy, w, p, corr):
    gx = xs[np.newaxis, :]
    gy = ys[:, np.newaxis]
    total = np.zeros((ys.shape[0], xs.shape[0]))
    for i in range(fx.shape[0]):
        dx = gx - fx[i]
        dy = gy - fy[i]
        if p == 2.0:
            d = np.sqrt(dx * dx + dy * dy)
        elif p == 1.0:
            d = np.abs(dx) + np.abs(dy)
        else:
            d = (np.abs(dx) ** p + np.abs(dy) ** p) ** (1.0 / p)
        total += w[i] * (corr * d)
    return total


def _refine_crossings_loops(ax, ay, bx, by, fx, fy, w, p, corr, s, tol):
    n = ax.shape[0]
    px = np.empty(n)
    py = np.empty(n)
    for k in prange(n):
        lox = ax[k]
        loy = ay[k]
        hix = bx[k]
        hiy = by[k]
        mx = 0.5 * (lox + hix)
        my = 0.5 * (loy + hiy)
        for _ in range(_BISECT_MAX_ITER):
            mx = 0.5 * (lox + hix)
            my = 0.5 * (loy + hiy)
            fm = objective_at(mx, my, fx, fy, w, p, corr)
            if abs(fm - s) <= tol:
                break
            if (mx == lox and my == loy) or (mx == hix and my == hiy):
                break
            if fm <= s:
                lox = mx
                loy = my
            else:
                hix = mx
                hiy = my
        px[k] = mx
        py[k] = my
    return px, py


def refine_crossings_numpy(ax, ay, bx, by, fx, fy, w, p, corr, s, tol):
    lox = ax.copy()
    loy = ay.copy()
    hix = bx.copy()
    hiy = by.copy()
    px = 0.5 * (lox + hix)
    py = 0.5 * (loy + hiy)
    active = np.ones(ax.shape[0], dtype=bool)
    for _ in range(_BISECT_MAX_ITER):
        if not active.any():
            break
        mx = 0.5 * (lox[active] + hix[active])
        my = 0.5 * (loy[active] + hiy[active])
        fm = np.zeros(mx.shape[0])
        for i in range(fx.shape[0]):
            dx = mx - fx[i]
            dy = my - fy[i]
            if p == 2.0:
                d = np.sqrt(dx * dx + dy * dy)
            elif p == 1.0:
                d = np.abs(dx) + np.abs(dy)
            else:
                d = (np.abs(dx) ** p + np.abs(dy) ** p) ** (1.0 / p)
            fm += w[i] * (corr * d)
        px[active] = mx
        py[active] = my
        done = np.abs(fm - s) <= tol
        stuck = ((mx == lox[active]) & (my == loy[active])) | (
            (mx == hix[active]) & (my == hiy[active])
        )
        below = fm <= s
        idx = np.nonzero(active)[0]
        move_lo = idx[below & ~done & ~stuck]
        move_hi = idx[~below & ~done & ~stuck]
        lox[move_lo] = mx[below & ~done & ~stuck]
        loy[move_lo] = my[below & ~done & ~stuck]
        hix[move_hi] = mx[~below & ~done & ~stuck]
        hiy[move_hi] = my[~below & ~done & ~stuck]
        active[idx[done | stuck]] = False
    return px, py


def _area_fractions_loops(vals, xs, ys, s, fx, fy, w, p, corr):
    full = 0
    frac = 0.0
    for cy in range(ys.shape[0] - 1):
        for cx in range(xs.shape[0] - 1):
            v0 = vals[cy, cx]
            v1 = vals[cy, cx + 1]
            v2 = vals[cy + 1, cx + 1]
            v3 = vals[cy + 1, cx]
            b0 = v0 <= s
            b1 = v1 <= s
            b2 = v2 <= s
            b3 = v3 <= s
            n_in = int(b0) + int(b1) + int(b2) + int(b3)
            if n_in == 4:
                full += 1
            elif n_in > 0:
                vc = 0.0
                if n_in == 2 and b0 == b2 and b1 == b3:
                    vc = objective_at(
                        0.5 * (xs[cx] + xs[cx + 1]),
                        0.5 * (ys[cy] + ys[cy + 1]),
                        fx, fy, w, p, corr,
                    )
                frac += _cell_fraction(v0, v1, v2, v3, vc, s)
    return full, frac


def area_fractions_numpy(vals, xs, ys, s, fx, fy, w, p, corr):
    inside = vals <= s
    n_in = (
        inside[:-1, :-1].astype(np.int64)
        + inside[:-1, 1:]
        + inside[1:, 1:]
        + inside[1:, :-1]
    )
    full = int(np.count_nonzero(n_in == 4))
    frac = 0.0
    mixed_cy, mixed_cx = np.nonzero((n_in > 0) & (n_in < 4))
    for cy, cx in zip(mixed_cy, mixed_cx):
        v0 = vals[cy, cx]
        v1 = vals[cy, cx + 1]
        v2 = vals[cy + 1, cx + 1]
        v3 = vals[cy + 1, cx]
        b0 = v0 <= s
        b2 = v2 <= s
        vc = 0.0
        if (int(b0) + int(v1 <= s) + int(b2) + int(v3 <= s)) == 2 and b0 == b2:
            vc = float(
                objective_at(
                    0.5 * (xs[cx] + xs[cx + 1]),
                    0.5 * (ys[cy] + ys[cy + 1]),
                    fx, fy, w, p, corr,
                )
            )
        frac += _cell_fraction(v0, v1, v2, v3, vc, s)
    return full, frac


def _polyline_length_loops(vx, vy, closed):
    total = 0.0
    n = vx.shape[0]
    for i in range(n - 1):
        dx = vx[i + 1] - vx[i]
        dy = vy[i + 1] - vy[i]
        total += np.sqrt(dx * dx + dy * dy)
    if closed and n > 1:
        dx = vx[0] - vx[n - 1]
        dy = vy[0] - vy[n - 1]
        total += np.sqrt(dx * dx + dy * dy)
    return total


def polyline_length_numpy(vx, vy, closed):
    if vx.shape[0] < 2:
        return 0.0
    dx = np.diff(vx)
    dy = np.diff(vy)
    seg = np.sqrt(dx * dx + dy * dy)
    total = 0.0
    for v in seg:
        total += float(v)
    if closed:
        dx0 = vx[0] - vx[-1]
        dy0 = vy[0] - vy[-1]
        total += float(np.sqrt(dx0 * dx0 + dy0 * dy0))
    return total


def _count_at_or_below_loops(px, py, fx, fy, w, p, corr, s):
    count = 0
    for k in prange(px.shape[0]):
        if objective_at(px[k], py[k], fx, fy, w, p, corr) <= s:
            count += 1
    return count


def count_at_or_below_numpy(px, py, fx, fy, w, p, corr, s):
    total = np.zeros(px.shape[0])
    for i in range(fx.shape[0]):
        dx = px - fx[i]
        dy = py - fy[i]
        if p == 2.0:
            d = np.sqrt(dx * dx + dy * dy)
        elif p == 1.0:
            d = np.abs(dx) + np.abs(dy)
        else:
            d = (np.abs(dx) ** p + np.abs(dy) ** p) ** (1.0 / p)
        total += w[i] * (corr * d)
    return int(np.count_nonzero(total <= s))


if NUMBA_ENABLED:
    # parallel only where no float accumulation crosses threads, so both
    # backend paths stay bit-identical
    field_grid_numba = njit(cache=True, parallel=True)(_field_grid_loops)
    refine_crossings_numba = njit(cache=True, parallel=True)(_refine_crossings_loops)
    area_fractions_numba = njit(cache=True)(_area_fractions_loops)
    polyline_length_numba = njit(cache=True)(_polyline_length_loops)
    count_at_or_below_numba = njit(cache=True, parallel=True)(_count_at_or_below_loops)

    field_grid = field_grid_numba
    refine_crossings = refine_crossings_numba
    area_fractions = area_fractions_numba
    polyline_length = polyline_length_numba
    count_at_or_below = count_at_or_below_numba
else:
    field_grid_numba = None
    refine_crossings_numba = None
    area_fractions_numba = None
    polyline_length_numba = None
    count_at_or_below_numba = None

    field_grid = field_grid_numpy
    refine_crossings = refine_crossings_numpy
    area_fractions = area_fractions_numpy
    polyline_length = polyline_length_numpy
    count_at_or_below = count_at_or_below_numpy

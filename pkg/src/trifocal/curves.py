"""Level sets of the weighted objective: classification against the minimal
value, contour extraction, isoline families, field extrema, and area/
perimeter of the enclosed region with grid-refinement error estimates.

Contours come from marching squares over a sampled grid.  Every cell-edge
crossing is refined by bisection along that edge until the objective is
within refine_tol of the requested level, so the returned vertices lie on
the true curve, not on the linear interpolant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import RegionNotContainedError
from .geometry import FocusTriple, Metric, Point2, evaluate_distances
from .solver import solve_weber

__all__ = [
    "LevelParameter",
    "GraphicBox",
    "LevelCurve",
    "RegionMetrics",
    "FieldSample",
    "LEVEL_EMPTY",
    "LEVEL_SINGLE_POINT",
    "LEVEL_CURVE",
    "implicit_residual",
    "normalized_implicit_residual",
    "classify_level",
    "extract_contour",
    "region_metrics",
    "sample_field",
    "isoline_set",
]

LEVEL_EMPTY = "empty"
LEVEL_SINGLE_POINT = "single-point"
LEVEL_CURVE = "curve"

DEFAULT_REFINE_TOL_FACTOR = 1e-9
DEFAULT_BASE_RESOLUTION = 256


@dataclass(frozen=True)
class LevelParameter:
    """A requested level s together with the attainable minimum s0."""

    s: float
    s0: float

    def __post_init__(self):
        if not (math.isfinite(self.s0) and self.s0 >= 0.0):
            raise ValueError(f"s0 must be finite and >= 0, got {self.s0}")
        if not math.isfinite(self.s):
            raise ValueError(f"s must be finite, got {self.s}")


@dataclass(frozen=True)
class GraphicBox:
    """Rectangular sampling region with a cell count per axis."""

    x0: float
    y0: float
    x1: float
    y1: float
    nx: int = 256
    ny: int = 256

    def __post_init__(self):
        if not (self.x1 > self.x0 and self.y1 > self.y0):
            raise ValueError("box max corner must exceed min corner componentwise")
        if self.nx < 2 or self.ny < 2:
            raise ValueError("resolution must be at least 2 cells per axis")

    @property
    def dx(self) -> float:
        return (self.x1 - self.x0) / self.nx

    @property
    def dy(self) -> float:
        return (self.y1 - self.y0) / self.ny

    def node_xs(self) -> np.ndarray:
        return np.linspace(self.x0, self.x1, self.nx + 1)

    def node_ys(self) -> np.ndarray:
        return np.linspace(self.y0, self.y1, self.ny + 1)

    def with_resolution(self, nx: int, ny: int | None = None) -> "GraphicBox":
        return GraphicBox(self.x0, self.y0, self.x1, self.y1, nx, ny if ny is not None else nx)


@dataclass(frozen=True)
class LevelCurve:
    """Polyline approximation of one connected piece of a level set.

    Closed curves implicitly join the last vertex back to the first; open
    curves are pieces clipped by the graphic box.
    """

    vertices: np.ndarray  # shape (n, 2)
    closed: bool
    refine_tol: float

    def length(self) -> float:
        return float(
            kernels.polyline_length(
                np.ascontiguousarray(self.vertices[:, 0]),
                np.ascontiguousarray(self.vertices[:, 1]),
                self.closed,
            )
        )


@dataclass(frozen=True)
class RegionMetrics:
    """Area and perimeter of {f <= s} with two-resolution error estimates."""

    area: float
    perimeter: float
    area_error: float
    perimeter_error: float
    grid_step: float


@dataclass(frozen=True)
class FieldSample:
    """Objective sampled on the box grid, with its node extrema."""

    box: GraphicBox
    values: np.ndarray  # shape (ny+1, nx+1), row iy corresponds to node_ys()[iy]
    min_point: Point2
    min_value: float
    max_point: Point2
    max_value: float


def implicit_residual(m: Point2, foci: FocusTriple, s: float) -> float:
    """Defect of the squared-out degree-8 polynomial identity at m.

    Three squarings of the unit-weight three-distance equation give
    64 s^2 Q1 Q2 Q3 = ((s^2 + Q3 - Q2 - Q1)^2 - 4 Q1 Q2 - 4 s^2 Q3)^2 in the
    squared distances Qi; this returns LHS - RHS.  It vanishes on the level
    curve (and on the squaring artifacts), and only the unit-weight
    Euclidean case satisfies the identity.
    """
    w = foci.weights()
    if not (w[0] == 1.0 and w[1] == 1.0 and w[2] == 1.0):
        raise ValueError("the degree-8 identity is derived for unit weights only")
    q1, q2, q3 = evaluate_distances(m, foci).q
    s2 = s * s
    lhs = 64.0 * s2 * q1 * q2 * q3
    inner = (s2 + q3 - q2 - q1) ** 2 - 4.0 * q1 * q2 - 4.0 * s2 * q3
    return lhs - inner * inner


def normalized_implicit_residual(m: Point2, foci: FocusTriple, s: float) -> float:
    """implicit_residual with all coordinates rescaled so the level is 1.

    The residual is homogeneous of degree 8 in the coordinates, so this
    equals implicit_residual / s^8 up to roundoff and gives a scale-free
    on-curve defect.
    """
    if s <= 0:
        raise ValueError(f"level must be positive, got {s}")
    inv = 1.0 / s
    scaled = FocusTriple.from_coords(
        [(f.position.x * inv, f.position.y * inv, f.weight) for f in foci.foci]
    )
    return implicit_residual(Point2(m.x * inv, m.y * inv), scaled, 1.0)


def classify_level(lp: LevelParameter) -> str:
    """empty / single-point / curve, with a relative band around s0."""
    eps = 1e-9 * max(1.0, lp.s0)
    if lp.s < lp.s0 - eps:
        return LEVEL_EMPTY
    if abs(lp.s - lp.s0) <= eps:
        return LEVEL_SINGLE_POINT
    return LEVEL_CURVE


def _metric_args(foci: FocusTriple, metric: Metric):
    return (
        foci.xs(),
        foci.ys(),
        foci.weights(),
        float(metric.order_p),
        float(metric.correction),
    )


def _sample_grid(foci: FocusTriple, metric: Metric, box: GraphicBox):
    xs = box.node_xs()
    ys = box.node_ys()
    fx, fy, w, p, corr = _metric_args(foci, metric)
    vals = kernels.field_grid(xs, ys, fx, fy, w, p, corr)
    return xs, ys, vals


# Straight cases map to one cell segment joining two local edges
# (0=bottom, 1=right, 2=top, 3=left).  The two diagonal cases 5 and 10 are
# disambiguated by the sign at the cell center.
_SEGMENT_TABLE = {
    1: ((3, 0),),
    2: ((0, 1),),
    3: ((3, 1),),
    4: ((1, 2),),
    6: ((0, 2),),
    7: ((3, 2),),
    8: ((2, 3),),
    9: ((0, 2),),
    11: ((1, 2),),
    12: ((1, 3),),
    13: ((0, 1),),
    14: ((3, 0),),
}
_SADDLE_5 = {True: ((3, 2), (0, 1)), False: ((3, 0), (1, 2))}
_SADDLE_10 = {True: ((0, 3), (2, 1)), False: ((0, 1), (2, 3))}


def _edge_key(cx: int, cy: int, local: int):
    # (orientation, ix, iy): orientation 0 = horizontal node edge, 1 = vertical
    if local == 0:
        return (0, cx, cy)
    if local == 2:
        return (0, cx, cy + 1)
    if local == 3:
        return (1, cx, cy)
    return (1, cx + 1, cy)


def _collect_segments(xs, ys, vals, s, foci, metric):
    """Marching-squares pass: list of (edge_key, edge_key) segments in
    deterministic row-major cell order."""
    inside = vals <= s
    ins = inside.astype(np.int8)
    n_in = ins[:-1, :-1] + ins[:-1, 1:] + ins[1:, 1:] + ins[1:, :-1]
    mixed_cy, mixed_cx = np.nonzero((n_in > 0) & (n_in < 4))

    fx, fy, w, p, corr = _metric_args(foci, metric)
    segments = []
    for cy, cx in zip(mixed_cy.tolist(), mixed_cx.tolist()):
        b0 = inside[cy, cx]
        b1 = inside[cy, cx + 1]
        b2 = inside[cy + 1, cx + 1]
        b3 = inside[cy + 1, cx]
        case = int(b0) | int(b1) << 1 | int(b2) << 2 | int(b3) << 3
        if case in (5, 10):
            center = float(
                kernels.objective_at(
                    0.5 * (xs[cx] + xs[cx + 1]),
                    0.5 * (ys[cy] + ys[cy + 1]),
                    fx, fy, w, p, corr,
                )
            )
            table = _SADDLE_5 if case == 5 else _SADDLE_10
            cell_segments = table[center <= s]
        else:
            cell_segments = _SEGMENT_TABLE[case]
        for e1, e2 in cell_segments:
            segments.append((_edge_key(cx, cy, e1), _edge_key(cx, cy, e2)))
    return segments


def _refine_edge_points(keys, xs, ys, vals, s, foci, metric, refine_tol):
    """Bisect each crossing edge down to |f - s| <= refine_tol."""
    ax = np.empty(len(keys))
    ay = np.empty(len(keys))
    bx = np.empty(len(keys))
    by = np.empty(len(keys))
    for k, (orient, ix, iy) in enumerate(keys):
        if orient == 0:
            p0 = (xs[ix], ys[iy], vals[iy, ix])
            p1 = (xs[ix + 1], ys[iy], vals[iy, ix + 1])
        else:
            p0 = (xs[ix], ys[iy], vals[iy, ix])
            p1 = (xs[ix], ys[iy + 1], vals[iy + 1, ix])
        if p0[2] <= s:
            ax[k], ay[k] = p0[0], p0[1]
            bx[k], by[k] = p1[0], p1[1]
        else:
            ax[k], ay[k] = p1[0], p1[1]
            bx[k], by[k] = p0[0], p0[1]
    fx, fy, w, p, corr = _metric_args(foci, metric)
    px, py = kernels.refine_crossings(ax, ay, bx, by, fx, fy, w, p, corr, float(s), float(refine_tol))
    return {key: (px[k], py[k]) for k, key in enumerate(keys)}


def _chain_segments(segments):
    """Join cell segments into vertex-key chains.

    Open chains (curves clipped by the box) start at degree-1 edges; what
    remains forms closed loops.  Deterministic given the segment order.
    """
    adjacency: dict = {}
    for si, (e1, e2) in enumerate(segments):
        adjacency.setdefault(e1, []).append((si, e2))
        adjacency.setdefault(e2, []).append((si, e1))

    visited = [False] * len(segments)

    def walk(start):
        chain = [start]
        current = start
        while True:
            advanced = False
            for si, nb in adjacency[current]:
                if not visited[si]:
                    visited[si] = True
                    chain.append(nb)
                    current = nb
                    advanced = True
                    break
            if not advanced:
                return chain

    chains = []
    for key in sorted(k for k, links in adjacency.items() if len(links) == 1):
        if all(visited[si] for si, _ in adjacency[key]):
            continue
        chains.append((walk(key), False))
    for si, (e1, e2) in enumerate(segments):
        if visited[si]:
            continue
        chain = walk(min(e1, e2))
        closed = len(chain) > 1 and chain[0] == chain[-1]
        if closed:
            chain = chain[:-1]
        chains.append((chain, closed))
    return chains


def extract_contour(
    foci: FocusTriple,
    metric: Metric,
    box: GraphicBox,
    s: float,
    refine_tol: float | None = None,
) -> list[LevelCurve]:
    """Extract the level set {f = s} within the box as refined polylines.

    Returns an empty list when the level set misses the box.  Curves cut by
    the box boundary come back open; full loops are closed and oriented
    counterclockwise.
    """
    if refine_tol is None:
        refine_tol = DEFAULT_REFINE_TOL_FACTOR * abs(s)
    xs, ys, vals = _sample_grid(foci, metric, box)
    segments = _collect_segments(xs, ys, vals, s, foci, metric)
    if not segments:
        return []

    keys = sorted({k for seg in segments for k in seg})
    points = _refine_edge_points(keys, xs, ys, vals, s, foci, metric, refine_tol)

    curves = []
    for chain, closed in _chain_segments(segments):
        verts = [points[k] for k in chain]
        deduped = [verts[0]]
        for v in verts[1:]:
            if v != deduped[-1]:
                deduped.append(v)
        if closed and len(deduped) > 1 and deduped[0] == deduped[-1]:
            deduped.pop()
        if len(deduped) < 2:
            continue
        arr = np.array(deduped, dtype=np.float64)
        if closed:
            area2 = float(
                np.sum(arr[:, 0] * np.roll(arr[:, 1], -1) - np.roll(arr[:, 0], -1) * arr[:, 1])
            )
            if area2 < 0:
                arr = arr[::-1].copy()
        curves.append(LevelCurve(vertices=arr, closed=closed, refine_tol=float(refine_tol)))
    return curves


def _area_at(foci, metric, box, s):
    xs, ys, vals = _sample_grid(foci, metric, box)
    boundary_min = min(
        float(vals[0, :].min()),
        float(vals[-1, :].min()),
        float(vals[:, 0].min()),
        float(vals[:, -1].min()),
    )
    if boundary_min <= s:
        raise RegionNotContainedError(
            f"sublevel region {{f <= {s}}} reaches the box boundary "
            f"(boundary minimum {boundary_min}); enlarge the box"
        )
    fx, fy, w, p, corr = _metric_args(foci, metric)
    full, frac = kernels.area_fractions(vals, xs, ys, float(s), fx, fy, w, p, corr)
    return (float(full) + float(frac)) * box.dx * box.dy


def _perimeter_at(foci, metric, box, s):
    curves = extract_contour(foci, metric, box, s)
    return sum(c.length() for c in curves)


def region_metrics(
    foci: FocusTriple,
    metric: Metric,
    box: GraphicBox,
    s: float,
    base_resolution: int | None = None,
) -> RegionMetrics:
    """Area and perimeter of {f <= s} with refinement error estimates.

    Area uses cell counting with marching-squares fractions for boundary
    cells; perimeter totals the refined contour length.  Both run at the
    base resolution and at double resolution; the fine values are reported
    and half the difference serves as the error estimate.  The sublevel
    region must sit strictly inside the box.
    """
    if base_resolution is not None:
        coarse = box.with_resolution(base_resolution)
    else:
        coarse = box
    fine = coarse.with_resolution(2 * coarse.nx, 2 * coarse.ny)

    area_coarse = _area_at(foci, metric, coarse, s)
    area_fine = _area_at(foci, metric, fine, s)
    perim_coarse = _perimeter_at(foci, metric, coarse, s)
    perim_fine = _perimeter_at(foci, metric, fine, s)

    return RegionMetrics(
        area=area_fine,
        perimeter=perim_fine,
        area_error=abs(area_fine - area_coarse) / 2.0,
        perimeter_error=abs(perim_fine - perim_coarse) / 2.0,
        grid_step=max(fine.dx, fine.dy),
    )


def sample_field(foci: FocusTriple, metric: Metric, box: GraphicBox) -> FieldSample:
    """Sample the objective on the box grid and locate its node extrema."""
    xs, ys, vals = _sample_grid(foci, metric, box)
    imin = int(np.argmin(vals))
    imax = int(np.argmax(vals))
    miny, minx = divmod(imin, vals.shape[1])
    maxy, maxx = divmod(imax, vals.shape[1])
    return FieldSample(
        box=box,
        values=vals,
        min_point=Point2(float(xs[minx]), float(ys[miny])),
        min_value=float(vals[miny, minx]),
        max_point=Point2(float(xs[maxx]), float(ys[maxy])),
        max_value=float(vals[maxy, maxx]),
    )


def isoline_set(
    foci: FocusTriple,
    metric: Metric,
    box: GraphicBox,
    levels,
    refine_tol: float | None = None,
    s0: float | None = None,
) -> list[tuple[float, list[LevelCurve]]]:
    """Contours for a family of levels; levels below the minimum yield
    empty entries since no curve exists there."""
    if s0 is None:
        s0 = solve_weber(foci, metric).s0
    out = []
    for s in levels:
        s = float(s)
        if classify_level(LevelParameter(s, s0)) == LEVEL_EMPTY:
            out.append((s, []))
        else:
            out.append((s, extract_contour(foci, metric, box, s, refine_tol)))
    return out

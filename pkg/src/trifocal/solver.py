"""Minimizers of the weighted distance-sum objective.

For unit weights and Euclidean distance the classical compass construction
applies whenever every triangle angle is below 120 degrees; the general
weighted case runs a fixed-point iteration (with a vertex-optimality
pre-test that removes its divide-by-zero failure mode at the foci) followed
by a short Newton polish, and non-Euclidean orders fall back to simplex
descent on the objective.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ConstructionError
from .geometry import EUCLIDEAN, FocusTriple, Metric, Point2, weber_objective

__all__ = [
    "TriangleKind",
    "TriangleClassification",
    "TriangleGeometry",
    "SolveResult",
    "STATUS_INTERIOR",
    "STATUS_AT_VERTEX",
    "STATUS_DEGENERATE_COINCIDENT",
    "classify_triangle",
    "triangle_geometry",
    "equilateral_apex",
    "torricelli_construct",
    "solve_weber",
    "visschers_bound",
]

STATUS_INTERIOR = "interior"
STATUS_AT_VERTEX = "at-vertex"
STATUS_DEGENERATE_COINCIDENT = "degenerate-coincident"

# cos(120 deg); angles with cosine at or below this (within tolerance) make
# the vertex itself optimal for unit weights.
_COS_120 = -0.5
_ANGLE_TOL = 1e-12
_COLLINEAR_TOL = 1e-12
_COINCIDENT_TOL = 1e-14


class TriangleKind(Enum):
    ALL_BELOW_120 = "all-angles-below-120"
    ANGLE_AT_LEAST_120 = "angle-at-least-120"
    COLLINEAR = "collinear"
    COINCIDENT_PAIR = "coincident-pair"
    ALL_COINCIDENT = "all-coincident"


@dataclass(frozen=True)
class TriangleClassification:
    kind: TriangleKind
    vertex: int | None = None  # obtuse vertex index for ANGLE_AT_LEAST_120


@dataclass(frozen=True)
class TriangleGeometry:
    """Side lengths (a=|BC|, b=|CA|, c=|AB|) and vertex angles in degrees."""

    sides: tuple[float, float, float]
    angles: tuple[float, float, float]


@dataclass(frozen=True)
class SolveResult:
    point: Point2
    s0: float
    status: str
    vertex: int | None
    iterations: int
    residual: float
    converged: bool


def _positions(foci: FocusTriple):
    return [(f.position.x, f.position.y) for f in foci.foci]


def classify_triangle(foci: FocusTriple) -> TriangleClassification:
    """Sort the focus layout into the case the solver must handle.

    Exactly one class applies; the checks run from most to least degenerate.
    """
    pts = _positions(foci)
    d01 = math.dist(pts[0], pts[1])
    d12 = math.dist(pts[1], pts[2])
    d20 = math.dist(pts[2], pts[0])
    scale = max(d01, d12, d20)
    if scale == 0.0:
        return TriangleClassification(TriangleKind.ALL_COINCIDENT)
    if min(d01, d12, d20) <= _COINCIDENT_TOL * scale:
        return TriangleClassification(TriangleKind.COINCIDENT_PAIR)

    (ax, ay), (bx, by), (cx, cy) = pts
    cross = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    if abs(cross) <= _COLLINEAR_TOL * scale * scale:
        return TriangleClassification(TriangleKind.COLLINEAR)

    for i in range(3):
        j, k = (i + 1) % 3, (i + 2) % 3
        ux, uy = pts[j][0] - pts[i][0], pts[j][1] - pts[i][1]
        vx, vy = pts[k][0] - pts[i][0], pts[k][1] - pts[i][1]
        cosang = (ux * vx + uy * vy) / (math.hypot(ux, uy) * math.hypot(vx, vy))
        if cosang <= _COS_120 + _ANGLE_TOL:
            return TriangleClassification(TriangleKind.ANGLE_AT_LEAST_120, vertex=i)
    return TriangleClassification(TriangleKind.ALL_BELOW_120)


def triangle_geometry(foci: FocusTriple) -> TriangleGeometry:
    """Side lengths and angles; angles sum to 180 degrees for nondegenerate input."""
    pts = _positions(foci)
    a = math.dist(pts[1], pts[2])
    b = math.dist(pts[2], pts[0])
    c = math.dist(pts[0], pts[1])
    angles = []
    for i in range(3):
        j, k = (i + 1) % 3, (i + 2) % 3
        ux, uy = pts[j][0] - pts[i][0], pts[j][1] - pts[i][1]
        vx, vy = pts[k][0] - pts[i][0], pts[k][1] - pts[i][1]
        cross = ux * vy - uy * vx
        dot = ux * vx + uy * vy
        angles.append(math.degrees(math.atan2(abs(cross), dot)))
    return TriangleGeometry(sides=(a, b, c), angles=tuple(angles))


def visschers_bound(foci: FocusTriple) -> float:
    """Upper bound max{a+b, b+c, c+a} on the unit-weight distance sum at
    interior points."""
    a, b, c = triangle_geometry(foci).sides
    return max(a + b, b + c, c + a)


def equilateral_apex(p: tuple, q: tuple, away_from: tuple) -> tuple:
    """Apex of the equilateral triangle erected on segment pq, on the side
    opposite `away_from`."""
    mx, my = 0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1])
    # normal of length |pq|; apex sits sqrt(3)/2 of that off the midpoint
    nx, ny = -(q[1] - p[1]), q[0] - p[0]
    h = math.sqrt(3.0) / 2.0
    if (away_from[0] - mx) * nx + (away_from[1] - my) * ny > 0:
        return (mx - h * nx, my - h * ny)
    return (mx + h * nx, my + h * ny)


def _line_intersection(p1, d1, p2, d2):
    denom = d1[0] * d2[1] - d1[1] * d2[0]
    if denom == 0.0:
        raise ConstructionError("construction lines are parallel")
    t = ((p2[0] - p1[0]) * d2[1] - (p2[1] - p1[1]) * d2[0]) / denom
    return (p1[0] + t * d1[0], p1[1] + t * d1[1])


def _point_line_distance(pt, base, direction):
    norm = math.hypot(*direction)
    return abs((pt[0] - base[0]) * direction[1] - (pt[1] - base[1]) * direction[0]) / norm


def torricelli_construct(foci: FocusTriple) -> Point2:
    """Intersect two of the vertex-to-opposite-apex lines.

    Requires equal weights and a triangle with every angle below 120 degrees;
    outside that regime the minimizer sits on a vertex and no interior
    construction exists.  The third line is checked for concurrency against
    the returned point.
    """
    w = foci.weights()
    if not (w[0] == w[1] == w[2]):
        raise ConstructionError("construction requires equal weights")
    cls = classify_triangle(foci)
    if cls.kind is not TriangleKind.ALL_BELOW_120:
        raise ConstructionError(f"construction requires all angles below 120, got {cls.kind.value}")

    pa, pb, pc = _positions(foci)
    apex_a = equilateral_apex(pb, pc, away_from=pa)
    apex_b = equilateral_apex(pc, pa, away_from=pb)
    apex_c = equilateral_apex(pa, pb, away_from=pc)

    da = (apex_a[0] - pa[0], apex_a[1] - pa[1])
    db = (apex_b[0] - pb[0], apex_b[1] - pb[1])
    point = _line_intersection(pa, da, pb, db)

    geom = triangle_geometry(foci)
    a, b, c = geom.sides
    area = abs((pb[0] - pa[0]) * (pc[1] - pa[1]) - (pb[1] - pa[1]) * (pc[0] - pa[0])) / 2.0
    circumradius = a * b * c / (4.0 * area)
    dc = (apex_c[0] - pc[0], apex_c[1] - pc[1])
    if _point_line_distance(point, pc, dc) >= 1e-9 * circumradius:
        raise ConstructionError("construction lines failed to meet in a point")
    return Point2(*point)


def _vertex_optimal_index(foci: FocusTriple) -> int | None:
    """First focus index where the pulled-together unit pulls of the other
    two stay within its own weight, if any."""
    pts = _positions(foci)
    w = foci.weights().tolist()
    for i in range(3):
        gx = gy = 0.0
        for j in range(3):
            if j == i:
                continue
            dx = pts[i][0] - pts[j][0]
            dy = pts[i][1] - pts[j][1]
            d = math.hypot(dx, dy)
            gx += w[j] * dx / d
            gy += w[j] * dy / d
        if math.hypot(gx, gy) <= w[i] * (1.0 + 1e-12):
            return i
    return None


def _gradient_and_hessian(x, y, pts, w):
    gx = gy = hxx = hxy = hyy = 0.0
    for (px, py), wi in zip(pts, w):
        dx = x - px
        dy = y - py
        d = math.hypot(dx, dy)
        gx += wi * dx / d
        gy += wi * dy / d
        d3 = d * d * d
        hxx += wi * (dy * dy) / d3
        hyy += wi * (dx * dx) / d3
        hxy += wi * (-dx * dy) / d3
    return gx, gy, hxx, hxy, hyy


def _solve_euclidean(foci: FocusTriple, metric: Metric, tol: float, max_iter: int):
    pts = _positions(foci)
    w = foci.weights().tolist()
    scale = max(foci.scale(), 1e-300)

    vi = _vertex_optimal_index(foci)
    if vi is not None:
        point = foci.foci[vi].position
        return SolveResult(
            point=point,
            s0=weber_objective(point, foci, metric),
            status=STATUS_AT_VERTEX,
            vertex=vi,
            iterations=0,
            residual=0.0,
            converged=True,
        )

    wsum = sum(w)
    x = sum(wi * p[0] for p, wi in zip(pts, w)) / wsum
    y = sum(wi * p[1] for p, wi in zip(pts, w)) / wsum

    iterations = 0
    converged = False
    step = math.inf
    for _ in range(max_iter):
        iterations += 1
        num_x = num_y = den = 0.0
        singular = -1
        for i, (px, py) in enumerate(pts):
            d = math.hypot(x - px, y - py)
            if d <= 1e-15 * scale:
                singular = i
                break
            coeff = w[i] / d
            num_x += coeff * px
            num_y += coeff * py
            den += coeff
        if singular >= 0:
            # Landed on a non-optimal focus: step off along the descent
            # direction of the remaining pull.
            gx = gy = 0.0
            for j, (px, py) in enumerate(pts):
                if j == singular:
                    continue
                dx = pts[singular][0] - px
                dy = pts[singular][1] - py
                d = math.hypot(dx, dy)
                gx += w[j] * dx / d
                gy += w[j] * dy / d
            g = math.hypot(gx, gy)
            delta = max(tol, 1e-12 * scale)
            x = pts[singular][0] - delta * gx / g
            y = pts[singular][1] - delta * gy / g
            continue
        nx = num_x / den
        ny = num_y / den
        step = math.hypot(nx - x, ny - y)
        x, y = nx, ny
        if step < tol:
            converged = True
            break

    # Newton polish: the fixed-point iteration is linearly convergent, a few
    # damped Newton steps push the gradient to machine precision.
    gnorm = math.inf
    for _ in range(30):
        gx, gy, hxx, hxy, hyy = _gradient_and_hessian(x, y, pts, w)
        gnorm = math.hypot(gx, gy)
        if gnorm <= 1e-13 * wsum:
            break
        det = hxx * hyy - hxy * hxy
        if det <= 0.0 or not math.isfinite(det):
            break
        dx = (-gx * hyy + gy * hxy) / det
        dy = (-gy * hxx + gx * hxy) / det
        f0 = weber_objective(Point2(x, y), foci, metric)
        accepted = False
        t = 1.0
        for _ in range(20):
            cx, cy = x + t * dx, y + t * dy
            if min(math.hypot(cx - px, cy - py) for px, py in pts) > 1e-14 * scale:
                if weber_objective(Point2(cx, cy), foci, metric) <= f0:
                    x, y = cx, cy
                    accepted = True
                    break
            t *= 0.5
        iterations += 1
        if not accepted:
            break
    if math.isfinite(gnorm):
        residual = gnorm
    else:
        residual = step

    point = Point2(x, y)
    return SolveResult(
        point=point,
        s0=weber_objective(point, foci, metric),
        status=STATUS_INTERIOR,
        vertex=None,
        iterations=iterations,
        residual=residual,
        converged=converged,
    )


def _solve_simplex(foci: FocusTriple, metric: Metric, tol: float, max_iter: int):
    from scipy.optimize import minimize

    pts = _positions(foci)
    w = foci.weights().tolist()
    wsum = sum(w)
    x0 = np.array(
        [
            sum(wi * p[0] for p, wi in zip(pts, w)) / wsum,
            sum(wi * p[1] for p, wi in zip(pts, w)) / wsum,
        ]
    )

    def fun(v):
        return weber_objective(Point2(v[0], v[1]), foci, metric)

    # fatol is slaved to xatol through the objective's Lipschitz bound so the
    # simplex-diameter criterion is what actually terminates.
    lipschitz = 2.0 * metric.correction * wsum
    res = minimize(
        fun,
        x0,
        method="Nelder-Mead",
        options={
            "xatol": tol,
            "fatol": 4.0 * lipschitz * tol,
            "maxiter": max_iter,
            "maxfev": 4 * max_iter,
        },
    )
    xbest, fbest = res.x, float(res.fun)

    # The objective is not differentiable at the foci, where simplex descent
    # stalls just short; take a focus whenever it does at least as well.
    vertex = None
    for i, f in enumerate(foci.foci):
        fi = weber_objective(f.position, foci, metric)
        if fi <= fbest:
            fbest = fi
            vertex = i
    simplex = res.get("final_simplex")
    if simplex is not None:
        verts = simplex[0]
        diameter = max(
            float(np.hypot(*(verts[i] - verts[j])))
            for i in range(len(verts))
            for j in range(i + 1, len(verts))
        )
    else:
        diameter = tol

    if vertex is not None:
        point = foci.foci[vertex].position
        status = STATUS_AT_VERTEX
    else:
        point = Point2(float(xbest[0]), float(xbest[1]))
        status = STATUS_INTERIOR
    return SolveResult(
        point=point,
        s0=weber_objective(point, foci, metric),
        status=status,
        vertex=vertex,
        iterations=int(res.nit),
        residual=diameter,
        converged=bool(res.success),
    )


def _solve_coincident_pair(foci: FocusTriple, metric: Metric):
    pts = _positions(foci)
    d01 = math.dist(pts[0], pts[1])
    d12 = math.dist(pts[1], pts[2])
    d20 = math.dist(pts[2], pts[0])
    pair = min([(d01, (0, 1)), (d12, (1, 2)), (d20, (2, 0))], key=lambda t: t[0])[1]
    other = 3 - pair[0] - pair[1]
    w = foci.weights().tolist()
    w_pair = w[pair[0]] + w[pair[1]]
    w_other = w[other]

    if w_pair > w_other:
        vertex = min(pair)
        point = foci.foci[vertex].position
        status = STATUS_AT_VERTEX
    elif w_other > w_pair:
        vertex = other
        point = foci.foci[vertex].position
        status = STATUS_AT_VERTEX
    else:
        # Equal pull: the whole segment is optimal, return its midpoint.
        p = pts[pair[0]]
        q = pts[other]
        point = Point2(0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1]))
        vertex = None
        status = STATUS_INTERIOR
    return SolveResult(
        point=point,
        s0=weber_objective(point, foci, metric),
        status=status,
        vertex=vertex,
        iterations=0,
        residual=0.0,
        converged=True,
    )


def solve_weber(
    foci: FocusTriple,
    metric: Metric = EUCLIDEAN,
    tol: float = 1e-10,
    max_iter: int = 10_000,
) -> SolveResult:
    """Minimize the weighted distance sum; returns the point, the minimal
    value s0, and how the minimum was attained."""
    if not (tol > 0):
        raise ValueError(f"tol must be positive, got {tol}")
    if max_iter < 1:
        raise ValueError(f"max_iter must be >= 1, got {max_iter}")

    cls = classify_triangle(foci)
    if cls.kind is TriangleKind.ALL_COINCIDENT:
        point = foci.a.position
        return SolveResult(
            point=point,
            s0=weber_objective(point, foci, metric),
            status=STATUS_DEGENERATE_COINCIDENT,
            vertex=None,
            iterations=0,
            residual=0.0,
            converged=True,
        )
    if cls.kind is TriangleKind.COINCIDENT_PAIR:
        return _solve_coincident_pair(foci, metric)
    if metric.is_euclidean:
        return _solve_euclidean(foci, metric, tol, max_iter)
    return _solve_simplex(foci, metric, tol, max_iter)

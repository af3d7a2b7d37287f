"""Distance metrics and the weighted-sum objective field.

Everything downstream (solver, contouring, maps) samples the scalar field

    f(m) = w_a * d(m, a) + w_b * d(m, b) + w_c * d(m, c)

where d is a Minkowski-p distance, optionally stretched by a constant
road-correction factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import EvaluationAtFocusError

__all__ = [
    "Point2",
    "Focus",
    "FocusTriple",
    "Metric",
    "EUCLIDEAN",
    "EvaluatedDistances",
    "minkowski",
    "distance",
    "weber_objective",
    "weber_gradient",
    "evaluate_distances",
]


@dataclass(frozen=True)
class Point2:
    """A point in map units."""

    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"coordinates must be finite, got ({self.x}, {self.y})")

    def as_tuple(self) -> tuple[float, float]:
        return (self.x, self.y)


@dataclass(frozen=True)
class Focus:
    """A point with a positive importance weight."""

    position: Point2
    weight: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.weight) and self.weight > 0):
            raise ValueError(f"weight must be positive and finite, got {self.weight}")


@dataclass(frozen=True)
class FocusTriple:
    """The three weighted foci of the objective.

    Coincident and collinear positions are legal here; the solver classifies
    and handles those layouts.
    """

    a: Focus
    b: Focus
    c: Focus

    @classmethod
    def from_coords(cls, coords) -> "FocusTriple":
        """Build from three (x, y) or (x, y, weight) tuples."""
        foci = []
        for entry in coords:
            if len(entry) == 2:
                x, y = entry
                w = 1.0
            else:
                x, y, w = entry
            foci.append(Focus(Point2(float(x), float(y)), float(w)))
        if len(foci) != 3:
            raise ValueError(f"expected exactly 3 foci, got {len(foci)}")
        return cls(*foci)

    @property
    def foci(self) -> tuple[Focus, Focus, Focus]:
        return (self.a, self.b, self.c)

    def xs(self) -> np.ndarray:
        return np.array([f.position.x for f in self.foci], dtype=np.float64)

    def ys(self) -> np.ndarray:
        return np.array([f.position.y for f in self.foci], dtype=np.float64)

    def weights(self) -> np.ndarray:
        return np.array([f.weight for f in self.foci], dtype=np.float64)

    def scale(self) -> float:
        """Largest pairwise Euclidean separation; 0 when all foci coincide."""
        pts = [f.position for f in self.foci]
        best = 0.0
        for i in range(3):
            for j in range(i + 1, 3):
                d = math.hypot(pts[i].x - pts[j].x, pts[i].y - pts[j].y)
                if d > best:
                    best = d
        return best


@dataclass(frozen=True)
class Metric:
    """Minkowski-p distance with a constant correction factor >= 1.

    correction models the empirical stretch of road distances over straight
    lines; distance returned = correction * minkowski_p.
    """

    order_p: float = 2.0
    correction: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.order_p) and self.order_p >= 1.0):
            raise ValueError(f"order_p must be >= 1, got {self.order_p}")
        if not (math.isfinite(self.correction) and self.correction >= 1.0):
            raise ValueError(f"correction must be >= 1, got {self.correction}")

    @property
    def is_euclidean(self) -> bool:
        return self.order_p == 2.0


EUCLIDEAN = Metric()


@dataclass(frozen=True)
class EvaluatedDistances:
    """Euclidean distances r and squared distances q from one point to the foci."""

    r: tuple[float, float, float]
    q: tuple[float, float, float]


def minkowski(dx: float, dy: float, p: float) -> float:
    """Minkowski-p length of the displacement (dx, dy).

    The p == 1 and p == 2 branches are kept explicit so the accelerated grid
    kernels can reproduce them operation for operation.
    """
    if p == 2.0:
        return math.sqrt(dx * dx + dy * dy)
    if p == 1.0:
        return abs(dx) + abs(dy)
    return (abs(dx) ** p + abs(dy) ** p) ** (1.0 / p)


def distance(a: Point2, b: Point2, metric: Metric = EUCLIDEAN) -> float:
    """Corrected Minkowski-p distance between two points."""
    return metric.correction * minkowski(a.x - b.x, a.y - b.y, metric.order_p)


def weber_objective(m: Point2, foci: FocusTriple, metric: Metric = EUCLIDEAN) -> float:
    """Weighted sum of corrected distances from m to the three foci."""
    total = 0.0
    for f in foci.foci:
        total += f.weight * distance(m, f.position, metric)
    return total


def weber_gradient(m: Point2, foci: FocusTriple) -> tuple[float, float]:
    """Gradient of the Euclidean weighted objective at m.

    Undefined at the foci themselves; callers hitting that case must fall
    back to the vertex-optimality test instead of gradient information.
    """
    gx = 0.0
    gy = 0.0
    for f in foci.foci:
        dx = m.x - f.position.x
        dy = m.y - f.position.y
        d = math.sqrt(dx * dx + dy * dy)
        if d == 0.0:
            raise EvaluationAtFocusError(
                f"gradient is singular at focus position ({f.position.x}, {f.position.y})"
            )
        gx += f.weight * dx / d
        gy += f.weight * dy / d
    return (gx, gy)


def evaluate_distances(m: Point2, foci: FocusTriple) -> EvaluatedDistances:
    """Euclidean distances and their squares from m to the foci.

    q is computed first as the exact squared displacement; r = sqrt(q), so
    q - r*r stays within a few ulps.
    """
    rs = []
    qs = []
    for f in foci.foci:
        dx = m.x - f.position.x
        dy = m.y - f.position.y
        q = dx * dx + dy * dy
        qs.append(q)
        rs.append(math.sqrt(q))
    return EvaluatedDistances(r=tuple(rs), q=tuple(qs))

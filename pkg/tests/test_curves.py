import math

import numpy as np
import pytest

from trifocal.curves import (
    LEVEL_CURVE,
    LEVEL_EMPTY,
    LEVEL_SINGLE_POINT,
    GraphicBox,
    LevelParameter,
    classify_level,
    extract_contour,
    implicit_residual,
    isoline_set,
    normalized_implicit_residual,
    region_metrics,
    sample_field,
)
from trifocal.errors import RegionNotContainedError
from trifocal.geometry import EUCLIDEAN, FocusTriple, Metric, Point2, weber_objective
from trifocal.solver import solve_weber

from oracles import (
    brute_objective,
    monte_carlo_area,
    point_in_polygon,
    random_triangle,
    shoelace_area,
)

EQUILATERAL = FocusTriple.from_coords([(0, 0), (1, 0), (0.5, math.sqrt(3) / 2)])
COINCIDENT = FocusTriple.from_coords([(0, 0), (0, 0), (0, 0)])


def _assert_on_curve(curve, foci, metric, s):
    for x, y in curve.vertices:
        f = weber_objective(Point2(x, y), foci, metric)
        assert abs(f - s) <= curve.refine_tol


class TestGraphicBox:
    def test_invariants(self):
        with pytest.raises(ValueError):
            GraphicBox(0, 0, 0, 1, 4, 4)
        with pytest.raises(ValueError):
            GraphicBox(0, 0, 1, 1, 1, 4)

    def test_nodes(self):
        box = GraphicBox(0, 0, 1, 2, 4, 8)
        assert len(box.node_xs()) == 5
        assert len(box.node_ys()) == 9
        assert box.dx == 0.25
        assert box.dy == 0.25


class TestImplicitResidual:
    def test_symmetric_exact_identity(self):
        # all foci at the origin: both sides equal 64 s^8 / 729 analytically
        s = 3.0
        for m in (Point2(1.0, 0.0), Point2(0.0, 1.0), Point2(-1.0, 0.0)):
            assert implicit_residual(m, COINCIDENT, s) == 0.0

    def test_on_curve_vertices_nearly_vanish(self, rng):
        for _ in range(20):
            pts = random_triangle(rng, low=-1, high=1, min_side=5e-2)
            foci = FocusTriple.from_coords(pts)
            s0 = solve_weber(foci).s0
            s = 1.2 * s0
            box = _containing_box(foci, s, 128)
            curves = extract_contour(foci, EUCLIDEAN, box, s)
            assert curves
            for curve in curves:
                for x, y in curve.vertices[::5]:
                    r = normalized_implicit_residual(Point2(x, y), foci, s)
                    assert abs(r) < 1e-6

    def test_off_curve_probe_does_not_vanish(self, rng):
        for _ in range(20):
            pts = random_triangle(rng, low=-1, high=1, min_side=0.3)
            foci = FocusTriple.from_coords(pts)
            s0 = solve_weber(foci).s0
            s = 1.2 * s0
            # walk outward from the minimizer until f = 1.5 s (brute bisection)
            c = solve_weber(foci).point
            direction = rng.standard_normal(2)
            direction /= np.hypot(*direction)
            t_lo, t_hi = 0.0, 10.0 * s
            target = 1.5 * s
            for _ in range(200):
                t = 0.5 * (t_lo + t_hi)
                f = float(
                    brute_objective(
                        c.x + t * direction[0], c.y + t * direction[1],
                        [(f.position.x, f.position.y) for f in foci.foci],
                        [f.weight for f in foci.foci],
                    )
                )
                if f < target:
                    t_lo = t
                else:
                    t_hi = t
            m = Point2(c.x + t * direction[0], c.y + t * direction[1])
            assert abs(normalized_implicit_residual(m, foci, s)) > 1e-3

    def test_rejects_non_unit_weights(self):
        foci = FocusTriple.from_coords([(0, 0, 2), (1, 0, 1), (0, 1, 1)])
        with pytest.raises(ValueError):
            implicit_residual(Point2(0.2, 0.2), foci, 2.0)


class TestClassifyLevel:
    def test_below(self):
        assert classify_level(LevelParameter(s=0.5 * 2.0, s0=2.0)) == LEVEL_EMPTY

    def test_at(self):
        assert classify_level(LevelParameter(s=2.0, s0=2.0)) == LEVEL_SINGLE_POINT

    def test_above(self):
        assert classify_level(LevelParameter(s=4.0, s0=2.0)) == LEVEL_CURVE

    def test_band_is_relative(self):
        s0 = 1e6
        assert classify_level(LevelParameter(s=s0 + 1e-4, s0=s0)) == LEVEL_SINGLE_POINT
        assert classify_level(LevelParameter(s=s0 + 1.0, s0=s0)) == LEVEL_CURVE

    def test_validates(self):
        with pytest.raises(ValueError):
            LevelParameter(s=1.0, s0=-1.0)


def _containing_box(foci, s, resolution):
    heavy = max(foci.foci, key=lambda f: f.weight)
    r = 1.1 * math.sqrt(2.0) * s / heavy.weight
    return GraphicBox(
        heavy.position.x - r, heavy.position.y - r,
        heavy.position.x + r, heavy.position.y + r,
        resolution, resolution,
    )


class TestExtractContour:
    def test_disc_case(self):
        box = GraphicBox(-1.25, -1.25, 1.25, 1.25, 256, 256)
        curves = extract_contour(COINCIDENT, EUCLIDEAN, box, 3.0)
        assert len(curves) == 1
        curve = curves[0]
        assert curve.closed
        _assert_on_curve(curve, COINCIDENT, EUCLIDEAN, 3.0)
        # Hausdorff distance to the unit circle within 2 grid steps:
        # vertices sit on the circle, and gaps between successive vertices
        # stay below two cells, bounding the reverse direction too.
        radii = np.hypot(curve.vertices[:, 0], curve.vertices[:, 1])
        assert np.abs(radii - 1.0).max() < 2.0 * box.dx
        rolled = np.roll(curve.vertices, -1, axis=0)
        gaps = np.hypot(*(curve.vertices - rolled).T)
        assert gaps.max() < 2.0 * box.dx

    def test_equilateral_closed_convex(self):
        box = GraphicBox(-1, -1, 2, 2, 512, 512)
        curves = extract_contour(EQUILATERAL, EUCLIDEAN, box, 2.0)
        assert len(curves) == 1
        curve = curves[0]
        assert curve.closed
        _assert_on_curve(curve, EQUILATERAL, EUCLIDEAN, 2.0)
        v = curve.vertices
        edges = np.diff(np.vstack([v, v[:1]]), axis=0)
        cross = edges[:-1, 0] * edges[1:, 1] - edges[:-1, 1] * edges[1:, 0]
        norms = np.hypot(edges[:, 0], edges[:, 1])
        assert cross.min() >= -1e-9 * (norms.max() ** 2)

    def test_box_missing_curve_gives_empty(self):
        box = GraphicBox(5, 5, 6, 6, 64, 64)
        assert extract_contour(EQUILATERAL, EUCLIDEAN, box, 2.0) == []

    def test_clipped_curve_is_open(self):
        # box cuts through the s=2 oval of the equilateral triple
        box = GraphicBox(-1, -1, 0.5, 2, 128, 128)
        curves = extract_contour(EQUILATERAL, EUCLIDEAN, box, 2.0)
        assert curves
        assert any(not c.closed for c in curves)
        for c in curves:
            _assert_on_curve(c, EQUILATERAL, EUCLIDEAN, 2.0)

    def test_weighted_and_general_p(self, rng):
        foci = FocusTriple.from_coords([(0, 0, 2.0), (1, 0, 0.5), (0.3, 0.9, 1.5)])
        metric = Metric(order_p=1.5, correction=1.1)
        s0 = solve_weber(foci, metric).s0
        s = 1.5 * s0
        box = _containing_box(foci, s / 0.5, 128)
        curves = extract_contour(foci, metric, box, s)
        assert curves
        for c in curves:
            _assert_on_curve(c, foci, metric, s)

    def test_vertices_distinct(self):
        box = GraphicBox(-1.25, -1.25, 1.25, 1.25, 64, 64)
        for curve in extract_contour(COINCIDENT, EUCLIDEAN, box, 3.0):
            same = np.all(curve.vertices[:-1] == curve.vertices[1:], axis=1)
            assert not same.any()

    def test_custom_refine_tol(self):
        box = GraphicBox(-1.25, -1.25, 1.25, 1.25, 64, 64)
        tol = 1e-12 * 3.0
        curves = extract_contour(COINCIDENT, EUCLIDEAN, box, 3.0, refine_tol=tol)
        for curve in curves:
            assert curve.refine_tol == tol
            _assert_on_curve(curve, COINCIDENT, EUCLIDEAN, 3.0)


class TestRegionMetrics:
    def test_disc(self):
        box = GraphicBox(-1.25, -1.25, 1.25, 1.25)
        rm = region_metrics(COINCIDENT, EUCLIDEAN, box, 3.0, base_resolution=512)
        assert abs(rm.area - math.pi) <= max(1e-3, 3.0 * rm.area_error)
        assert abs(rm.perimeter - 2.0 * math.pi) <= max(1e-3, 3.0 * rm.perimeter_error)
        assert rm.grid_step == pytest.approx(2.5 / 1024)

    def test_error_estimate_shrinks_with_resolution(self):
        box = GraphicBox(-1.25, -1.25, 1.25, 1.25)
        rm1 = region_metrics(COINCIDENT, EUCLIDEAN, box, 3.0, base_resolution=256)
        rm2 = region_metrics(COINCIDENT, EUCLIDEAN, box, 3.0, base_resolution=512)
        assert rm2.area_error <= 0.6 * rm1.area_error

    def test_monte_carlo_oracle_equilateral(self):
        s = 2.0
        box = GraphicBox(-0.8, -0.9, 1.8, 1.8)
        rm = region_metrics(EQUILATERAL, EUCLIDEAN, box, s, base_resolution=256)
        coords = [(f.position.x, f.position.y) for f in EQUILATERAL.foci]
        mc, stderr = monte_carlo_area(
            coords, [1.0] * 3, s, (-0.8, -0.9, 1.8, 1.8), 2_000_000, seed=7
        )
        combined = math.hypot(stderr, rm.area_error)
        assert abs(rm.area - mc) <= 3.0 * combined

    def test_region_touching_box_raises(self):
        box = GraphicBox(-0.9, -0.9, 0.9, 0.9, 64, 64)
        with pytest.raises(RegionNotContainedError):
            region_metrics(COINCIDENT, EUCLIDEAN, box, 3.0)

    def test_area_monotone_in_level(self):
        box = GraphicBox(-2.1, -2.1, 2.1, 2.1)
        rm1 = region_metrics(COINCIDENT, EUCLIDEAN, box, 3.0, base_resolution=128)
        rm2 = region_metrics(COINCIDENT, EUCLIDEAN, box, 4.5, base_resolution=128)
        assert rm1.area < rm2.area

    def test_symmetry_under_reflection(self):
        foci = FocusTriple.from_coords([(0.1, 0), (1, 0.2), (0.4, 1)])
        mirrored = FocusTriple.from_coords([(-0.1, 0), (-1, 0.2), (-0.4, 1)])
        s = 1.4 * solve_weber(foci).s0
        box = GraphicBox(-3, -2.5, 3, 3.5, 128, 128)
        rm1 = region_metrics(foci, EUCLIDEAN, box, s)
        rm2 = region_metrics(mirrored, EUCLIDEAN, box, s)
        assert rm2.area == pytest.approx(rm1.area, rel=1e-9)
        assert rm2.perimeter == pytest.approx(rm1.perimeter, rel=1e-9)


class TestSampleField:
    def test_min_near_fermat_point(self):
        box = GraphicBox(-1, -1, 2, 2, 256, 256)
        fs = sample_field(EQUILATERAL, EUCLIDEAN, box)
        cell_diag = math.hypot(box.dx, box.dy)
        assert math.hypot(fs.min_point.x - 0.5, fs.min_point.y - math.sqrt(3) / 6) <= cell_diag

    def test_max_on_boundary(self, rng):
        for _ in range(20):
            pts = random_triangle(rng, low=-1, high=1)
            foci = FocusTriple.from_coords(pts)
            box = GraphicBox(-2, -2, 2, 2, 64, 64)
            fs = sample_field(foci, EUCLIDEAN, box)
            on_edge = (
                fs.max_point.x in (box.x0, box.x1) or fs.max_point.y in (box.y0, box.y1)
            )
            assert on_edge

    def test_degenerate_two_cell_grid(self):
        box = GraphicBox(0, 0, 1, 1, 2, 2)
        fs = sample_field(EQUILATERAL, EUCLIDEAN, box)
        vals = fs.values
        assert vals.shape == (3, 3)
        assert fs.min_value == vals.min()
        assert fs.max_value == vals.max()

    def test_grid_invariance(self):
        box = GraphicBox(-1, -1, 2, 2, 32, 32)
        fs = sample_field(EQUILATERAL, EUCLIDEAN, box)
        assert fs.min_value <= fs.values.min() + 0
        assert fs.max_value >= fs.values.max() - 0


class TestIsolineSet:
    def test_levels_below_minimum_are_empty(self):
        s0 = solve_weber(EQUILATERAL).s0
        box = GraphicBox(-1, -1, 2, 2, 64, 64)
        out = isoline_set(EQUILATERAL, EUCLIDEAN, box, [0.5 * s0])
        assert out == [(0.5 * s0, [])]

    def test_level_at_minimum_degenerates(self):
        s0 = solve_weber(EQUILATERAL).s0
        box = GraphicBox(-1, -1, 2, 2, 64, 64)
        (_, curves), = isoline_set(EQUILATERAL, EUCLIDEAN, box, [s0])
        if curves:
            for c in curves:
                span = c.vertices.max(axis=0) - c.vertices.min(axis=0)
                assert max(span) < 2.0 * math.hypot(box.dx, box.dy)

    def test_nesting(self, rng):
        for _ in range(10):
            pts = random_triangle(rng, low=-1, high=1, min_side=5e-2)
            w = rng.uniform(0.5, 2.0, 3)
            foci = FocusTriple.from_coords([(x, y, wi) for (x, y), wi in zip(pts, w)])
            s0 = solve_weber(foci).s0
            levels = [1.1 * s0, 1.5 * s0, 2.0 * s0]
            box = _containing_box(foci, levels[-1] / w.min() * 2, 192)
            out = isoline_set(foci, EUCLIDEAN, box, levels, s0=s0)
            rings = []
            for level, curves in out:
                assert len(curves) == 1
                assert curves[0].closed
                rings.append(curves[0].vertices)
            for inner, outer in zip(rings[:-1], rings[1:]):
                for x, y in inner[::7]:
                    assert point_in_polygon(x, y, outer)
                assert shoelace_area(inner) < shoelace_area(outer)

"""Batch command line: solve, contour, metrics, render, serve.

Exit codes: 0 success, 2 validation problems (bad flags, malformed scenario,
level below the minimum, region not contained), 3 numeric non-convergence.
"""

from __future__ import annotations

import functools
import json
import math
import sys
from pathlib import Path

import click

from .curves import GraphicBox, isoline_set, region_metrics
from .errors import TrifocalError
from .geomap import Scenario, load_bundled_scenario, load_scenario, scenario_plane_foci
from .geometry import Focus, FocusTriple, Metric, Point2
from .render import geojson_document, svg_document, write_geojson
from .service import DEFAULT_PORT
from .solver import solve_weber

EXIT_VALIDATION = 2
EXIT_NO_CONVERGENCE = 3


def _domain_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (TrifocalError, ValueError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_VALIDATION)

    return wrapper


def _parse_focus(value: str) -> tuple:
    parts = value.split(",")
    if len(parts) not in (2, 3):
        raise click.UsageError(f"--focus expects 'x,y[,w]', got {value!r}")
    try:
        return tuple(float(p) for p in parts)
    except ValueError:
        raise click.UsageError(f"--focus expects numbers, got {value!r}") from None


def _parse_metric(value: str) -> Metric:
    parts = value.split(",")
    try:
        p = float(parts[0])
        corr = float(parts[1]) if len(parts) > 1 else 1.0
    except (ValueError, IndexError):
        raise click.UsageError(f"--metric expects 'p[,correction]', got {value!r}") from None
    return Metric(order_p=p, correction=corr)


def _parse_levels(value: str) -> list[float]:
    try:
        return [float(v) for v in value.split(",") if v.strip()]
    except ValueError:
        raise click.UsageError(f"--levels expects comma-separated numbers, got {value!r}") from None


def _parse_box(value: str) -> tuple:
    parts = value.split(",")
    if len(parts) != 4:
        raise click.UsageError(f"--box expects 'x0,y0,x1,y1', got {value!r}")
    try:
        return tuple(float(p) for p in parts)
    except ValueError:
        raise click.UsageError(f"--box expects numbers, got {value!r}") from None


def _resolve_scenario(value: str) -> Scenario:
    path = Path(value)
    if path.exists():
        return load_scenario(path)
    name = value[: -len(".scenario")] if value.endswith(".scenario") else value
    return load_bundled_scenario(name)


class Problem:
    """Inputs resolved from flags: planar foci plus optional geo context."""

    def __init__(self, foci: FocusTriple, metric: Metric, scenario: Scenario | None,
                 lon_scale: float | None):
        self.foci = foci
        self.metric = metric
        self.scenario = scenario
        self.lon_scale = lon_scale

    def to_geo(self, x: float, y: float) -> tuple[float, float]:
        if self.lon_scale is None:
            return (x, y)
        return (x / self.lon_scale, y)


def _build_problem(scenario: str | None, focus: tuple, metric: str) -> Problem:
    m = _parse_metric(metric)
    if scenario and focus:
        raise click.UsageError("use either --scenario or --focus, not both")
    if scenario:
        sc = _resolve_scenario(scenario)
        triple, k = scenario_plane_foci(sc)
        return Problem(triple, m, sc, k)
    if len(focus) != 3:
        raise click.UsageError("exactly three --focus options are required (or --scenario)")
    triple = FocusTriple(
        *(Focus(Point2(f[0], f[1]), f[2] if len(f) == 3 else 1.0) for f in map(_parse_focus, focus))
    )
    return Problem(triple, m, None, None)


def _auto_box(problem: Problem, s_max: float, resolution: int) -> GraphicBox:
    """Square box guaranteed to strictly contain {f <= s_max}.

    The level region lies within Minkowski distance s/(w*corr) of each
    focus; the Euclidean radius is at most sqrt(2) times that, padded 5%.
    """
    best = max(problem.foci.foci, key=lambda f: f.weight)
    r = 1.05 * math.sqrt(2.0) * s_max / (best.weight * problem.metric.correction)
    cx, cy = best.position.x, best.position.y
    return GraphicBox(cx - r, cy - r, cx + r, cy + r, resolution, resolution)


def _make_box(problem: Problem, box: str | None, resolution: int, s_max: float) -> GraphicBox:
    if box is not None:
        x0, y0, x1, y1 = _parse_box(box)
        return GraphicBox(x0, y0, x1, y1, resolution, resolution)
    return _auto_box(problem, s_max, resolution)


def _write_output(text: str, out: str | None):
    if out is None or out == "-":
        click.echo(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _focus_names(problem: Problem) -> list[str] | None:
    if problem.scenario is None:
        return None
    return [f.name for f in problem.scenario.foci]


def _check_converged(result):
    if not result.converged:
        click.echo("error: solver did not converge within the iteration budget", err=True)
        sys.exit(EXIT_NO_CONVERGENCE)


_scenario_opt = click.option("--scenario", default=None, help="Scenario file or bundled name.")
_focus_opt = click.option("--focus", multiple=True, help="Focus as 'x,y,w' (three times).")
_metric_opt = click.option("--metric", default="2", help="Distance order 'p[,correction]'.")
_resolution_opt = click.option("--resolution", default=256, show_default=True, help="Grid cells per axis.")
_box_opt = click.option("--box", default=None, help="Sampling box 'x0,y0,x1,y1' (auto when omitted).")
_out_opt = click.option("--out", default=None, help="Output path (stdout when omitted).")


@click.group()
def main():
    """Weighted three-point location planning: optimal points, level curves,
    region measurements, and map renderings."""


@main.command()
@_scenario_opt
@_focus_opt
@_metric_opt
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@_domain_errors
def solve(scenario, focus, metric, fmt):
    """Locate the minimum of the weighted distance sum."""
    problem = _build_problem(scenario, focus, metric)
    result = solve_weber(problem.foci, problem.metric)
    _check_converged(result)
    px, py = problem.to_geo(result.point.x, result.point.y)
    if fmt == "json":
        click.echo(
            json.dumps(
                {
                    "point": {"x": px, "y": py},
                    "s0": result.s0,
                    "status": result.status,
                    "vertex": result.vertex,
                    "iterations": result.iterations,
                    "converged": result.converged,
                },
                indent=2,
            )
        )
    else:
        click.echo(f"point: {px} {py}")
        click.echo(f"s0: {result.s0}")
        click.echo(f"status: {result.status}" + (f" (focus {result.vertex})" if result.vertex is not None else ""))


@main.command()
@_scenario_opt
@_focus_opt
@_metric_opt
@click.option("--s", "s_value", type=float, default=None, help="Single level value.")
@click.option("--levels", default=None, help="Comma-separated level values.")
@_box_opt
@_resolution_opt
@click.option("--refine-tol", type=float, default=None, help="On-curve tolerance (default 1e-9*s).")
@click.option("--format", "fmt", type=click.Choice(["geojson", "json", "svg"]), default="geojson")
@_out_opt
@_domain_errors
def contour(scenario, focus, metric, s_value, levels, box, resolution, refine_tol, fmt, out):
    """Extract level curves of the objective."""
    problem = _build_problem(scenario, focus, metric)
    if s_value is None and levels is None:
        if problem.scenario is not None and problem.scenario.s is not None:
            s_value = problem.scenario.s
        else:
            raise click.UsageError("provide --s or --levels")
    result = solve_weber(problem.foci, problem.metric)
    _check_converged(result)

    level_list = [s_value] if s_value is not None else _parse_levels(levels)
    if s_value is not None and s_value < result.s0 * (1 - 1e-9):
        click.echo(f"error: level {s_value} is below the minimum s0={result.s0}", err=True)
        sys.exit(EXIT_VALIDATION)
    gbox = _make_box(problem, box, resolution, max(level_list))
    leveled = isoline_set(problem.foci, problem.metric, gbox, level_list,
                          refine_tol=refine_tol, s0=result.s0)
    _emit_curves(problem, result, leveled, fmt, out)


def _emit_curves(problem, result, leveled, fmt, out, background=None):
    transform = problem.to_geo if problem.lon_scale is not None else None
    if fmt == "svg":
        text = _scenario_svg(problem, result, leveled, background)
    elif fmt == "geojson":
        doc = geojson_document(
            leveled,
            foci=problem.foci,
            focus_names=_focus_names(problem),
            solution=(result.point.x, result.point.y),
            s0=result.s0,
            transform=transform,
        )
        text = write_geojson(doc)
    else:
        text = json.dumps(
            {
                "s0": result.s0,
                "contours": [
                    {
                        "level": level,
                        "curves": [
                            {
                                "closed": c.closed,
                                "refine_tol": c.refine_tol,
                                "vertices": [list(problem.to_geo(x, y)) for x, y in c.vertices],
                            }
                            for c in curves
                        ],
                    }
                    for level, curves in leveled
                ],
            },
            indent=2,
        )
    _write_output(text, out)


def _scenario_svg(problem, result, leveled, background):
    if problem.scenario is not None:
        cal = problem.scenario.calibration
        k = problem.lon_scale

        def to_pixel(x, y):
            lon, lat = x / k, y
            px = cal.width * (lon - cal.west) / (cal.east - cal.west)
            py = cal.height * (cal.north - lat) / (cal.north - cal.south)
            return (px, py)

        return svg_document(
            leveled,
            foci=problem.foci,
            focus_names=_focus_names(problem),
            solution=(result.point.x, result.point.y),
            bounds=(0.0, 0.0, float(cal.width), float(cal.height)),
            width=float(cal.width),
            flip_y=False,
            background=background,
            transform=to_pixel,
        )
    return svg_document(
        leveled,
        foci=problem.foci,
        solution=(result.point.x, result.point.y),
        background=background,
    )


@main.command()
@_scenario_opt
@_focus_opt
@_metric_opt
@click.option("--s", "s_value", type=float, required=True, help="Level value bounding the region.")
@_box_opt
@_resolution_opt
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@_out_opt
@_domain_errors
def metrics(scenario, focus, metric, s_value, box, resolution, fmt, out):
    """Area and perimeter of the region {objective <= s} with error estimates."""
    problem = _build_problem(scenario, focus, metric)
    result = solve_weber(problem.foci, problem.metric)
    _check_converged(result)
    if s_value < result.s0 * (1 - 1e-9):
        click.echo(f"error: level {s_value} is below the minimum s0={result.s0}", err=True)
        sys.exit(EXIT_VALIDATION)
    gbox = _make_box(problem, box, resolution, s_value)
    rm = region_metrics(problem.foci, problem.metric, gbox, s_value)
    if fmt == "json":
        text = json.dumps(
            {
                "s0": result.s0,
                "area": rm.area,
                "perimeter": rm.perimeter,
                "area_error": rm.area_error,
                "perimeter_error": rm.perimeter_error,
                "grid_step": rm.grid_step,
            },
            indent=2,
        )
    else:
        text = "\n".join(
            [
                f"area: {rm.area} +/- {rm.area_error}",
                f"perimeter: {rm.perimeter} +/- {rm.perimeter_error}",
                f"grid_step: {rm.grid_step}",
                f"s0: {result.s0}",
            ]
        )
    _write_output(text, out)


@main.command()
@_scenario_opt
@_focus_opt
@_metric_opt
@click.option("--s", "s_value", type=float, default=None, help="Single level value.")
@click.option("--levels", default=None, help="Comma-separated level values.")
@_box_opt
@_resolution_opt
@click.option("--refine-tol", type=float, default=None)
@click.option("--format", "fmt", type=click.Choice(["svg", "geojson"]), default="svg")
@click.option("--background", default=None, help="Raster image embedded behind an SVG rendering.")
@_out_opt
@_domain_errors
def render(scenario, focus, metric, s_value, levels, box, resolution, refine_tol, fmt, background, out):
    """Draw curves, foci markers, and the optimal point (SVG or GeoJSON)."""
    problem = _build_problem(scenario, focus, metric)
    result = solve_weber(problem.foci, problem.metric)
    _check_converged(result)
    if s_value is None and levels is None and problem.scenario is not None:
        s_value = problem.scenario.s
    if s_value is not None and s_value < result.s0 * (1 - 1e-9):
        click.echo(f"error: level {s_value} is below the minimum s0={result.s0}", err=True)
        sys.exit(EXIT_VALIDATION)
    if s_value is not None:
        level_list = [s_value]
    elif levels is not None:
        level_list = _parse_levels(levels)
    else:
        level_list = []
    if level_list:
        gbox = _make_box(problem, box, resolution, max(level_list))
        leveled = isoline_set(problem.foci, problem.metric, gbox, level_list,
                              refine_tol=refine_tol, s0=result.s0)
    else:
        leveled = []
    _emit_curves(problem, result, leveled, fmt, out, background=background)


@main.command()
@click.option("--port", default=DEFAULT_PORT, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
def serve(port, host):
    """Run the local HTTP service consumed by the planner UI."""
    import uvicorn

    from .service import app

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()

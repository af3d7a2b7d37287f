"""Local HTTP API over the solver and curve engine.

Every endpoint is a pure function of its request payload: no sessions, no
caching, identical requests produce byte-identical responses.  Heavy
contouring requests run in the server threadpool so new connections keep
being accepted.  Errors use {code, message, details} bodies, with s0
attached where the client needs it to clamp its level slider.
"""

from __future__ import annotations

from typing import Optional

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .curves import (
    LEVEL_EMPTY,
    GraphicBox,
    LevelParameter,
    classify_level,
    extract_contour,
    isoline_set,
    region_metrics,
    sample_field,
)
from .errors import LevelBelowMinimumError, RegionNotContainedError
from .geomap import bundled_scenario_names, geo_to_pixel, load_bundled_scenario, solve_scenario
from .geometry import Focus, FocusTriple, Metric, Point2
from .solver import solve_weber

DEFAULT_PORT = 7350


class FocusIn(BaseModel):
    model_config = ConfigDict(extra="forbid")
    x: float = Field(allow_inf_nan=False)
    y: float = Field(allow_inf_nan=False)
    w: float = Field(default=1.0, gt=0.0, le=10.0, allow_inf_nan=False)


class MetricIn(BaseModel):
    model_config = ConfigDict(extra="forbid")
    p: float = Field(default=2.0, ge=1.0, allow_inf_nan=False)
    correction: float = Field(default=1.0, ge=1.0, allow_inf_nan=False)


class BoxIn(BaseModel):
    model_config = ConfigDict(extra="forbid")
    x0: float = Field(allow_inf_nan=False)
    y0: float = Field(allow_inf_nan=False)
    x1: float = Field(allow_inf_nan=False)
    y1: float = Field(allow_inf_nan=False)

    @model_validator(mode="after")
    def _ordered(self):
        if not (self.x1 > self.x0 and self.y1 > self.y0):
            raise ValueError("box must satisfy x1 > x0 and y1 > y0")
        return self


class SolveRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    id: Optional[str] = None
    foci: list[FocusIn] = Field(min_length=3, max_length=3)
    metric: MetricIn = MetricIn()


class ContourRequest(SolveRequest):
    box: BoxIn
    s: Optional[float] = Field(default=None, gt=0.0, allow_inf_nan=False)
    levels: Optional[list[float]] = None
    resolution: int = Field(default=256, ge=2, le=4096)

    @model_validator(mode="after")
    def _has_level(self):
        if self.s is None and self.levels is None:
            raise ValueError("either 's' or 'levels' is required")
        return self


class RegionMetricsRequest(SolveRequest):
    box: BoxIn
    s: float = Field(gt=0.0, allow_inf_nan=False)
    resolution: int = Field(default=256, ge=2, le=4096)


class FieldRequest(SolveRequest):
    box: BoxIn
    resolution: int = Field(default=64, ge=2, le=4096)


def _triple(req: SolveRequest) -> FocusTriple:
    return FocusTriple(*(Focus(Point2(f.x, f.y), f.w) for f in req.foci))


def _metric(req: SolveRequest) -> Metric:
    return Metric(order_p=req.metric.p, correction=req.metric.correction)


def _graphic_box(box: BoxIn, resolution: int) -> GraphicBox:
    return GraphicBox(box.x0, box.y0, box.x1, box.y1, resolution, resolution)


def _solve_payload(req: SolveRequest, result) -> dict:
    return {
        "id": req.id,
        "point": {"x": result.point.x, "y": result.point.y},
        "s0": result.s0,
        "status": result.status,
        "vertex": result.vertex,
        "iterations": result.iterations,
        "residual": result.residual,
        "converged": result.converged,
    }


def _curve_payload(curve) -> dict:
    return {
        "closed": curve.closed,
        "refine_tol": curve.refine_tol,
        "vertices": [[float(x), float(y)] for x, y in curve.vertices],
    }


def create_app() -> FastAPI:
    app = FastAPI(title="trifocal service", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(RequestValidationError)
    def _validation_handler(request: Request, exc: RequestValidationError):
        details = [
            {
                "field": ".".join(str(part) for part in err["loc"]),
                "message": err["msg"],
            }
            for err in exc.errors()
        ]
        return JSONResponse(
            status_code=400,
            content={
                "code": "validation-error",
                "message": "request failed validation",
                "details": details,
            },
        )

    @app.exception_handler(LevelBelowMinimumError)
    def _level_handler(request: Request, exc: LevelBelowMinimumError):
        return JSONResponse(
            status_code=422,
            content={
                "code": "level-below-minimum",
                "message": str(exc),
                "details": [],
                "s0": exc.s0,
            },
        )

    @app.exception_handler(RegionNotContainedError)
    def _region_handler(request: Request, exc: RegionNotContainedError):
        return JSONResponse(
            status_code=422,
            content={
                "code": "region-not-contained",
                "message": str(exc),
                "details": [],
            },
        )

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    @app.post("/api/solve")
    def api_solve(req: SolveRequest):
        result = solve_weber(_triple(req), _metric(req))
        return _solve_payload(req, result)

    @app.post("/api/contour")
    def api_contour(req: ContourRequest):
        foci = _triple(req)
        metric = _metric(req)
        result = solve_weber(foci, metric)
        box = _graphic_box(req.box, req.resolution)
        if req.s is not None:
            if classify_level(LevelParameter(req.s, result.s0)) == LEVEL_EMPTY:
                raise LevelBelowMinimumError(req.s, result.s0)
            levels = [(req.s, extract_contour(foci, metric, box, req.s))]
        else:
            levels = isoline_set(foci, metric, box, req.levels, s0=result.s0)
        payload = _solve_payload(req, result)
        payload["contours"] = [
            {"level": level, "curves": [_curve_payload(c) for c in curves]}
            for level, curves in levels
        ]
        return payload

    @app.post("/api/region-metrics")
    def api_region_metrics(req: RegionMetricsRequest):
        foci = _triple(req)
        metric = _metric(req)
        result = solve_weber(foci, metric)
        if classify_level(LevelParameter(req.s, result.s0)) == LEVEL_EMPTY:
            raise LevelBelowMinimumError(req.s, result.s0)
        box = _graphic_box(req.box, req.resolution)
        rm = region_metrics(foci, metric, box, req.s)
        payload = _solve_payload(req, result)
        payload["metrics"] = {
            "area": rm.area,
            "perimeter": rm.perimeter,
            "area_error": rm.area_error,
            "perimeter_error": rm.perimeter_error,
            "grid_step": rm.grid_step,
        }
        return payload

    @app.post("/api/field")
    def api_field(req: FieldRequest):
        foci = _triple(req)
        metric = _metric(req)
        result = solve_weber(foci, metric)
        box = _graphic_box(req.box, req.resolution)
        fs = sample_field(foci, metric, box)
        payload = _solve_payload(req, result)
        payload["field"] = {
            "resolution": req.resolution,
            "min": {"x": fs.min_point.x, "y": fs.min_point.y, "value": fs.min_value},
            "max": {"x": fs.max_point.x, "y": fs.max_point.y, "value": fs.max_value},
            "values": [[float(v) for v in row] for row in fs.values],
        }
        return payload

    @app.get("/api/scenarios")
    def api_scenarios():
        out = []
        for name in bundled_scenario_names():
            sc = load_bundled_scenario(name)
            sol = solve_scenario(sc)
            cal = sc.calibration
            foci = []
            for f in sc.foci:
                px = geo_to_pixel(f.lon, f.lat, cal)
                foci.append(
                    {"name": f.name, "lon": f.lon, "lat": f.lat, "w": f.weight,
                     "px": px.x, "py": px.y}
                )
            out.append(
                {
                    "name": sc.name,
                    "s": sc.s,
                    "map": {
                        "width": cal.width,
                        "height": cal.height,
                        "west": cal.west,
                        "east": cal.east,
                        "south": cal.south,
                        "north": cal.north,
                    },
                    "foci": foci,
                    "solution": {"lon": sol.lon, "lat": sol.lat, "s0": sol.result.s0},
                }
            )
        return {"scenarios": out}

    return app


app = create_app()

#!/usr/bin/env python3
"""Record real service responses into frontend/fixtures/*.json.

Each fixture stores the request next to the response so UI tests can both
serve and introspect them.  Run with the service up:

    trifocal serve --port 7351 &
    python3 scripts/record-fixtures.py http://127.0.0.1:7351
"""

import json
import math
import sys
import urllib.error
import urllib.request
from pathlib import Path

BASE = sys.argv[1] if len(sys.argv) > 1 else "http://127.0.0.1:7351"
OUT = Path(__file__).resolve().parent.parent / "fixtures"

CANVAS = {"x0": 0.0, "y0": 0.0, "x1": 800.0, "y1": 600.0}
RESOLUTION = 128
FIELD_RESOLUTION = 48
LADDER_SIZE = 8

DEFAULT_FOCI = [
    {"x": 200.0, "y": 400.0, "w": 1.0},
    {"x": 600.0, "y": 400.0, "w": 1.0},
    {"x": 400.0, "y": 150.0, "w": 1.0},
]
OBTUSE_FOCI = [
    {"x": 200.0, "y": 400.0, "w": 1.0},
    {"x": 600.0, "y": 400.0, "w": 1.0},
    {"x": 400.0, "y": 430.0, "w": 1.0},
]
DOMINANT_FOCI = [
    {"x": 200.0, "y": 400.0, "w": 10.0},
    {"x": 600.0, "y": 400.0, "w": 1.0},
    {"x": 400.0, "y": 150.0, "w": 1.0},
]


def call(path, payload=None):
    url = f"{BASE}{path}"
    if payload is None:
        req = urllib.request.Request(url)
    else:
        req = urllib.request.Request(
            url,
            data=json.dumps(payload).encode(),
            headers={"Content-Type": "application/json"},
        )
    try:
        with urllib.request.urlopen(req, timeout=120) as r:
            return r.status, json.loads(r.read())
    except urllib.error.HTTPError as e:
        return e.code, json.loads(e.read())


def save(name, request, status, response, path):
    doc = {"path": path, "request": request, "status": status, "response": response}
    (OUT / f"{name}.json").write_text(json.dumps(doc, indent=2) + "\n")
    print(f"recorded {name}.json (status {status})")


def main():
    OUT.mkdir(exist_ok=True)

    req = {"foci": DEFAULT_FOCI}
    status, solve_interior = call("/api/solve", req)
    assert status == 200 and solve_interior["status"] == "interior", solve_interior
    save("solve-interior", req, status, solve_interior, "/api/solve")
    s0 = solve_interior["s0"]

    req = {"foci": OBTUSE_FOCI}
    status, body = call("/api/solve", req)
    assert status == 200 and body["status"] == "at-vertex" and body["vertex"] == 2, body
    save("solve-obtuse", req, status, body, "/api/solve")

    req = {"foci": DOMINANT_FOCI}
    status, body = call("/api/solve", req)
    assert status == 200 and body["status"] == "at-vertex" and body["vertex"] == 0, body
    save("solve-dominant", req, status, body, "/api/solve")

    s_mid = float(math.ceil(1.15 * s0))
    s_outer = float(math.ceil(1.35 * s0))

    req = {"foci": DEFAULT_FOCI, "box": CANVAS, "s": s_mid, "resolution": RESOLUTION}
    status, body = call("/api/contour", req)
    assert status == 200 and body["contours"][0]["curves"][0]["closed"], "mid curve must close"
    save("contour-mid", req, status, body, "/api/contour")

    req = {"foci": DEFAULT_FOCI, "box": CANVAS, "s": s_outer, "resolution": RESOLUTION}
    status, body = call("/api/contour", req)
    assert status == 200 and body["contours"][0]["curves"][0]["closed"], "outer curve must close"
    save("contour-outer", req, status, body, "/api/contour")

    req = {"foci": DEFAULT_FOCI, "box": CANVAS, "s": 300.0, "resolution": RESOLUTION}
    status, body = call("/api/contour", req)
    assert status == 422 and body["code"] == "level-below-minimum", body
    save("contour-below-min", req, status, body, "/api/contour")

    # doubling every weight and the level leaves the curve identical
    # (scaling by 2 is exact in floats, so vertex-for-vertex)
    doubled = [dict(f, w=2.0 * f["w"]) for f in DEFAULT_FOCI]
    req = {"foci": doubled, "box": CANVAS, "s": 2.0 * s_mid, "resolution": RESOLUTION}
    status, body = call("/api/contour", req)
    assert status == 200, body
    save("contour-mid-doubled", req, status, body, "/api/contour")

    req = {"foci": DEFAULT_FOCI, "box": CANVAS, "s": s_mid, "resolution": RESOLUTION}
    status, body = call("/api/region-metrics", req)
    assert status == 200, body
    save("metrics-mid", req, status, body, "/api/region-metrics")

    req = {"foci": DEFAULT_FOCI, "box": CANVAS, "s": s_outer, "resolution": RESOLUTION}
    status, body = call("/api/region-metrics", req)
    assert status == 200, body
    save("metrics-outer", req, status, body, "/api/region-metrics")

    req = {"foci": DEFAULT_FOCI, "box": CANVAS, "resolution": FIELD_RESOLUTION}
    status, field = call("/api/field", req)
    assert status == 200, field
    save("field", req, status, field, "/api/field")

    # ladder: uniform strictly between s0 and the box maximum (matches the
    # controller's formula)
    fmax = field["field"]["max"]["value"]
    levels = [s0 + k * (fmax - s0) / (LADDER_SIZE + 1) for k in range(1, LADDER_SIZE + 1)]
    req = {"foci": DEFAULT_FOCI, "box": CANVAS, "levels": levels, "resolution": RESOLUTION}
    status, body = call("/api/contour", req)
    assert status == 200 and len(body["contours"]) == LADDER_SIZE, body
    save("isolines-ladder", req, status, body, "/api/contour")

    status, body = call("/api/scenarios")
    assert status == 200, body
    save("scenarios", None, status, body, "/api/scenarios")

    print(f"\ninterior s0 = {s0}, s_mid = {s_mid}, s_outer = {s_outer}, field max = {fmax}")


if __name__ == "__main__":
    main()

"""SVG and GeoJSON writers for curves, foci, and the optimal point.

Coordinates pass through an optional transform (used to map the planar
solving frame back to lon/lat or to image pixels); numbers are serialized
at full double precision so round-tripping loses nothing.
"""

from __future__ import annotations

import base64
import json
from pathlib import Path

from .curves import LevelCurve
from .geometry import FocusTriple

__all__ = ["geojson_document", "write_geojson", "svg_document"]


def _apply(transform, x, y):
    if transform is None:
        return (float(x), float(y))
    return transform(float(x), float(y))


def geojson_document(
    leveled_curves: list[tuple[float, list[LevelCurve]]],
    foci: FocusTriple | None = None,
    focus_names: list[str] | None = None,
    solution=None,
    s0: float | None = None,
    transform=None,
) -> dict:
    """Build a FeatureCollection: closed curves as Polygons, open ones as
    LineStrings, each tagged with its level; foci and the optimum as Points."""
    features = []
    for level, curves in leveled_curves:
        for curve in curves:
            coords = [list(_apply(transform, x, y)) for x, y in curve.vertices]
            if curve.closed:
                coords.append(coords[0])
                geometry = {"type": "Polygon", "coordinates": [coords]}
            else:
                geometry = {"type": "LineString", "coordinates": coords}
            features.append(
                {
                    "type": "Feature",
                    "geometry": geometry,
                    "properties": {"level": level, "closed": curve.closed},
                }
            )
    if foci is not None:
        for i, f in enumerate(foci.foci):
            name = focus_names[i] if focus_names else f"focus-{i}"
            features.append(
                {
                    "type": "Feature",
                    "geometry": {
                        "type": "Point",
                        "coordinates": list(_apply(transform, f.position.x, f.position.y)),
                    },
                    "properties": {"role": "focus", "name": name, "weight": f.weight},
                }
            )
    if solution is not None:
        props = {"role": "optimum"}
        if s0 is not None:
            props["s0"] = s0
        features.append(
            {
                "type": "Feature",
                "geometry": {
                    "type": "Point",
                    "coordinates": list(_apply(transform, solution[0], solution[1])),
                },
                "properties": props,
            }
        )
    return {"type": "FeatureCollection", "features": features}


def write_geojson(doc: dict) -> str:
    return json.dumps(doc, indent=2)


_CURVE_COLORS = ["#c0392b", "#2980b9", "#27ae60", "#8e44ad", "#d35400", "#16a085"]


def svg_document(
    leveled_curves: list[tuple[float, list[LevelCurve]]],
    foci: FocusTriple | None = None,
    focus_names: list[str] | None = None,
    solution=None,
    bounds: tuple[float, float, float, float] | None = None,
    width: float = 800.0,
    flip_y: bool = True,
    background: str | Path | None = None,
    transform=None,
) -> str:
    """Render curves and markers to a standalone SVG string.

    bounds is (x0, y0, x1, y1) in the coordinates produced by `transform`
    (identity by default).  flip_y flips the vertical axis for math-style
    coordinates; pass False when drawing in image pixel space.  background
    embeds a raster image stretched over the full canvas.
    """
    pts: list[tuple[float, float]] = []
    for _, curves in leveled_curves:
        for c in curves:
            pts.extend(_apply(transform, x, y) for x, y in c.vertices)
    if foci is not None:
        pts.extend(_apply(transform, f.position.x, f.position.y) for f in foci.foci)
    if bounds is None:
        if not pts:
            raise ValueError("nothing to render and no bounds given")
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        pad_x = 0.05 * (max(xs) - min(xs) or 1.0)
        pad_y = 0.05 * (max(ys) - min(ys) or 1.0)
        bounds = (min(xs) - pad_x, min(ys) - pad_y, max(xs) + pad_x, max(ys) + pad_y)
    x0, y0, x1, y1 = bounds
    scale = width / (x1 - x0)
    height = (y1 - y0) * scale

    def to_px(x, y):
        px = (x - x0) * scale
        py = (y1 - y) * scale if flip_y else (y - y0) * scale
        return px, py

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" height="{height:.0f}" '
        f'viewBox="0 0 {width:.6g} {height:.6g}">'
    ]
    if background is not None:
        data = base64.b64encode(Path(background).read_bytes()).decode("ascii")
        suffix = Path(background).suffix.lower().lstrip(".") or "png"
        mime = "image/jpeg" if suffix in ("jpg", "jpeg") else f"image/{suffix}"
        parts.append(
            f'<image href="data:{mime};base64,{data}" x="0" y="0" '
            f'width="{width:.6g}" height="{height:.6g}" preserveAspectRatio="none"/>'
        )
    else:
        parts.append(f'<rect width="{width:.6g}" height="{height:.6g}" fill="white"/>')

    for li, (level, curves) in enumerate(leveled_curves):
        color = _CURVE_COLORS[li % len(_CURVE_COLORS)]
        for curve in curves:
            d = []
            for k, (x, y) in enumerate(curve.vertices):
                px, py = to_px(*_apply(transform, x, y))
                d.append(f'{"M" if k == 0 else "L"} {px:.3f} {py:.3f}')
            if curve.closed:
                d.append("Z")
            parts.append(
                f'<path d="{" ".join(d)}" fill="none" stroke="{color}" stroke-width="1.5">'
                f"<title>level {level!r}</title></path>"
            )

    if foci is not None:
        for i, f in enumerate(foci.foci):
            px, py = to_px(*_apply(transform, f.position.x, f.position.y))
            name = focus_names[i] if focus_names else f"focus-{i}"
            parts.append(f'<circle cx="{px:.3f}" cy="{py:.3f}" r="4" fill="#2c3e50"/>')
            parts.append(
                f'<text x="{px + 6:.3f}" y="{py - 6:.3f}" font-size="12" '
                f'font-family="sans-serif" fill="#2c3e50">{name}</text>'
            )
    if solution is not None:
        px, py = to_px(*_apply(transform, solution[0], solution[1]))
        parts.append(
            f'<g stroke="#e74c3c" stroke-width="2">'
            f'<line x1="{px - 5:.3f}" y1="{py:.3f}" x2="{px + 5:.3f}" y2="{py:.3f}"/>'
            f'<line x1="{px:.3f}" y1="{py - 5:.3f}" x2="{px:.3f}" y2="{py + 5:.3f}"/></g>'
        )
    parts.append("</svg>")
    return "\n".join(parts)

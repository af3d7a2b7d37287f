"""Map calibration, pixel/geo transforms, and named location scenarios.

A calibration ties an equirectangular map image to lon/lat bounds with a
plain affine transform (y grows downward, image convention).  Scenario
files describe three named geo foci plus the calibration; solving happens
in a longitude-corrected planar frame where lon differences are shrunk by
the cosine of the foci's mean latitude before the metric applies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import OutOfBoundsError, ScenarioParseError
from .geometry import EUCLIDEAN, Focus, FocusTriple, Metric, Point2
from .solver import SolveResult, solve_weber

__all__ = [
    "MapCalibration",
    "GeoFocus",
    "Scenario",
    "ScenarioSolution",
    "geo_to_pixel",
    "pixel_to_geo",
    "parse_scenario",
    "load_scenario",
    "bundled_scenario_names",
    "load_bundled_scenario",
    "scenario_plane_foci",
    "solve_scenario",
]


@dataclass(frozen=True)
class MapCalibration:
    """Pixel size of a map image and the lon/lat degrees of its edges."""

    width: int
    height: int
    west: float
    east: float
    south: float
    north: float

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise ValueError("image size must be positive")
        if not (self.west < self.east and self.south < self.north):
            raise ValueError("geo bounds must satisfy west < east and south < north")

    def contains(self, lon: float, lat: float) -> bool:
        return self.west <= lon <= self.east and self.south <= lat <= self.north


def geo_to_pixel(lon: float, lat: float, cal: MapCalibration) -> Point2:
    """Affine lon/lat -> pixel; the north-west corner maps to (0, 0)."""
    if not cal.contains(lon, lat):
        raise OutOfBoundsError(f"({lon}, {lat}) outside calibrated bounds")
    x = cal.width * (lon - cal.west) / (cal.east - cal.west)
    y = cal.height * (cal.north - lat) / (cal.north - cal.south)
    return Point2(x, y)


def pixel_to_geo(q: Point2, cal: MapCalibration) -> tuple[float, float]:
    """Exact inverse of geo_to_pixel for points inside the image rectangle."""
    if not (0.0 <= q.x <= cal.width and 0.0 <= q.y <= cal.height):
        raise OutOfBoundsError(f"pixel ({q.x}, {q.y}) outside image rectangle")
    lon = cal.west + q.x * (cal.east - cal.west) / cal.width
    lat = cal.north - q.y * (cal.north - cal.south) / cal.height
    return (lon, lat)


@dataclass(frozen=True)
class GeoFocus:
    name: str
    lon: float
    lat: float
    weight: float = 1.0


@dataclass(frozen=True)
class Scenario:
    """Three named geo foci with weights, a map calibration, and an
    optional default level value."""

    name: str
    foci: tuple[GeoFocus, GeoFocus, GeoFocus]
    calibration: MapCalibration
    s: float | None = None


@dataclass(frozen=True)
class ScenarioSolution:
    lon: float
    lat: float
    result: SolveResult
    lon_scale: float  # cos(mean latitude) applied to longitudes


_MAP_KEYS = {"image", "west", "east", "south", "north"}
_FOCUS_KEYS = {"name", "lon", "lat", "weight"}
_SCENARIO_KEYS = {"name", "s"}


def _parse_float(value: str, key: str, line: int) -> float:
    try:
        return float(value)
    except ValueError:
        raise ScenarioParseError(f"value for '{key}' is not a number: {value!r}", line) from None


def parse_scenario(text: str, default_name: str = "scenario") -> Scenario:
    """Parse the key/value scenario document format.

    Sections: optional [scenario] (name, s), one [map] (image=WxH, west,
    east, south, north), and exactly three [focus] (name, lon, lat, weight).
    Unknown sections or keys are rejected with the offending line number.
    """
    sections: list[tuple[str, int, dict]] = []
    current: dict | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#") or line.startswith(";"):
            continue
        if line.startswith("[") and line.endswith("]"):
            label = line[1:-1].strip().lower()
            if label not in ("scenario", "map", "focus"):
                raise ScenarioParseError(f"unknown section [{label}]", lineno)
            current = {}
            sections.append((label, lineno, current))
            continue
        if "=" not in line:
            raise ScenarioParseError(f"expected 'key = value', got {line!r}", lineno)
        if current is None:
            raise ScenarioParseError("key/value pair before any section header", lineno)
        key, _, value = line.partition("=")
        key = key.strip().lower()
        current[key] = (value.strip(), lineno)

    labels = [label for label, _, _ in sections]
    if labels.count("map") != 1:
        raise ScenarioParseError(f"expected exactly one [map] section, found {labels.count('map')}")
    if labels.count("focus") != 3:
        raise ScenarioParseError(f"expected exactly three [focus] sections, found {labels.count('focus')}")
    if labels.count("scenario") > 1:
        raise ScenarioParseError("more than one [scenario] section")

    name = default_name
    default_s = None
    calibration = None
    foci: list[GeoFocus] = []
    for label, header_line, body in sections:
        allowed = {"scenario": _SCENARIO_KEYS, "map": _MAP_KEYS, "focus": _FOCUS_KEYS}[label]
        for key, (_, lineno) in body.items():
            if key not in allowed:
                raise ScenarioParseError(f"unknown key '{key}' in [{label}]", lineno)
        if label == "scenario":
            if "name" in body:
                name = body["name"][0]
            if "s" in body:
                default_s = _parse_float(*body["s"], line=body["s"][1])
        elif label == "map":
            for req in _MAP_KEYS:
                if req not in body:
                    raise ScenarioParseError(f"[map] is missing '{req}'", header_line)
            image, img_line = body["image"]
            try:
                w_str, h_str = image.lower().split("x")
                width, height = int(w_str), int(h_str)
            except ValueError:
                raise ScenarioParseError(
                    f"image must be WIDTHxHEIGHT in pixels, got {image!r}", img_line
                ) from None
            try:
                calibration = MapCalibration(
                    width=width,
                    height=height,
                    west=_parse_float(*body["west"], line=body["west"][1]),
                    east=_parse_float(*body["east"], line=body["east"][1]),
                    south=_parse_float(*body["south"], line=body["south"][1]),
                    north=_parse_float(*body["north"], line=body["north"][1]),
                )
            except ValueError as exc:
                raise ScenarioParseError(str(exc), header_line) from None
        else:
            for req in ("name", "lon", "lat", "weight"):
                if req not in body:
                    raise ScenarioParseError(f"[focus] is missing '{req}'", header_line)
            weight = _parse_float(*body["weight"], line=body["weight"][1])
            if weight <= 0:
                raise ScenarioParseError(
                    f"focus weight must be positive, got {weight}", body["weight"][1]
                )
            foci.append(
                GeoFocus(
                    name=body["name"][0],
                    lon=_parse_float(*body["lon"], line=body["lon"][1]),
                    lat=_parse_float(*body["lat"], line=body["lat"][1]),
                    weight=weight,
                )
            )

    assert calibration is not None
    for f in foci:
        if not calibration.contains(f.lon, f.lat):
            raise ScenarioParseError(
                f"focus '{f.name}' at ({f.lon}, {f.lat}) lies outside the map bounds"
            )
    return Scenario(name=name, foci=tuple(foci), calibration=calibration, s=default_s)


def load_scenario(path) -> Scenario:
    """Load and validate a scenario file from disk."""
    p = Path(path)
    return parse_scenario(p.read_text(encoding="utf-8"), default_name=p.stem)


def _data_root():
    return resources.files("trifocal").joinpath("data")


def bundled_scenario_names() -> list[str]:
    return sorted(
        entry.name[: -len(".scenario")]
        for entry in _data_root().iterdir()
        if entry.name.endswith(".scenario")
    )


def load_bundled_scenario(name: str) -> Scenario:
    entry = _data_root().joinpath(f"{name}.scenario")
    try:
        text = entry.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ScenarioParseError(
            f"no bundled scenario named {name!r}; available: {bundled_scenario_names()}"
        ) from None
    return parse_scenario(text, default_name=name)


def mean_latitude(scenario: Scenario) -> float:
    return sum(f.lat for f in scenario.foci) / len(scenario.foci)


def scenario_plane_foci(scenario: Scenario) -> tuple[FocusTriple, float]:
    """Project the scenario foci into the longitude-corrected plane.

    Distances in raw degrees overweigh longitude away from the equator;
    shrinking lon by cos(mean lat) makes the planar metric locally
    faithful.  Returns the planar triple and the applied lon scale.
    """
    k = math.cos(math.radians(mean_latitude(scenario)))
    triple = FocusTriple(
        *(Focus(Point2(f.lon * k, f.lat), f.weight) for f in scenario.foci)
    )
    return triple, k


def solve_scenario(
    scenario: Scenario,
    metric: Metric = EUCLIDEAN,
    tol: float = 1e-10,
    max_iter: int = 10_000,
) -> ScenarioSolution:
    """Optimal location for the scenario, reported back in lon/lat."""
    triple, k = scenario_plane_foci(scenario)
    result = solve_weber(triple, metric, tol=tol, max_iter=max_iter)
    return ScenarioSolution(
        lon=result.point.x / k,
        lat=result.point.y,
        result=result,
        lon_scale=k,
    )

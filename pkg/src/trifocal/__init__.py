"""Weighted Fermat-Torricelli-Weber location planning toolkit.

Computes optimal points for three weighted foci under Minkowski metrics,
extracts and measures the level curves of the weighted distance sum, and
overlays results on calibrated maps through a CLI and a local HTTP service.
"""

from .accel import NUMBA_ENABLED, backend_name
from .curves import (
    LEVEL_CURVE,
    LEVEL_EMPTY,
    LEVEL_SINGLE_POINT,
    FieldSample,
    GraphicBox,
    LevelCurve,
    LevelParameter,
    RegionMetrics,
    classify_level,
    extract_contour,
    implicit_residual,
    isoline_set,
    normalized_implicit_residual,
    region_metrics,
    sample_field,
)
from .errors import (
    ConstructionError,
    EvaluationAtFocusError,
    LevelBelowMinimumError,
    OutOfBoundsError,
    RegionNotContainedError,
    ScenarioParseError,
    TrifocalError,
)
from .geomap import (
    GeoFocus,
    MapCalibration,
    Scenario,
    ScenarioSolution,
    bundled_scenario_names,
    geo_to_pixel,
    load_bundled_scenario,
    load_scenario,
    parse_scenario,
    pixel_to_geo,
    scenario_plane_foci,
    solve_scenario,
)
from .geometry import (
    EUCLIDEAN,
    EvaluatedDistances,
    Focus,
    FocusTriple,
    Metric,
    Point2,
    distance,
    evaluate_distances,
    minkowski,
    weber_gradient,
    weber_objective,
)
from .solver import (
    STATUS_AT_VERTEX,
    STATUS_DEGENERATE_COINCIDENT,
    STATUS_INTERIOR,
    SolveResult,
    TriangleClassification,
    TriangleGeometry,
    TriangleKind,
    classify_triangle,
    equilateral_apex,
    solve_weber,
    torricelli_construct,
    triangle_geometry,
    visschers_bound,
)

__version__ = "0.1.0"

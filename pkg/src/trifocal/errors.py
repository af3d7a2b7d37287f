"""Exception types shared across the package."""


class TrifocalError(Exception):
    """Base class for all errors raised by this package."""


class EvaluationAtFocusError(TrifocalError):
    """Gradient requested at a focus, where the objective is not differentiable."""


class ConstructionError(TrifocalError):
    """Geometric construction preconditions not met (degenerate or obtuse input)."""


class RegionNotContainedError(TrifocalError):
    """The sublevel region reaches the sampling box boundary, so area/perimeter
    over the box would be truncated."""


class OutOfBoundsError(TrifocalError):
    """Coordinate outside the calibrated map bounds or image rectangle."""


class ScenarioParseError(TrifocalError):
    """Malformed scenario document.  Carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class LevelBelowMinimumError(TrifocalError):
    """A single level curve was requested for s below the attainable minimum s0."""

    def __init__(self, s: float, s0: float):
        self.s = s
        self.s0 = s0
        super().__init__(f"level s={s!r} is below the minimal objective value s0={s0!r}")

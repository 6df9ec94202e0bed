from __future__ import annotations

import math
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property

from shapely.geometry import LinearRing, LineString, Point, Polygon
from shapely.geometry.base import BaseGeometry
from shapely.validation import explain_validity

from proxregio.core.errors import InvalidRegionError, ParameterError

Coordinate = tuple[float, float]


@dataclass(frozen=True, order=True)
class Point2:
    x: float
    y: float

    def __post_init__(self) -> None:
        x, y = float(self.x), float(self.y)
        if not (math.isfinite(x) and math.isfinite(y)):
            raise ParameterError("point", (self.x, self.y), "Point coordinates must be finite")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @classmethod
    def of(cls, value: Point2 | Sequence[float]) -> Point2:
        if isinstance(value, Point2):
            return value
        x, y = value
        return cls(x, y)

    def as_tuple(self) -> Coordinate:
        return (self.x, self.y)

    def distance_to(self, other: Point2) -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


@dataclass(frozen=True)
class Box:
    min_x: float
    min_y: float
    max_x: float
    max_y: float

    def __post_init__(self) -> None:
        for name in ("min_x", "min_y", "max_x", "max_y"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ParameterError(name, value)
            object.__setattr__(self, name, value)
        if self.max_x <= self.min_x or self.max_y <= self.min_y:
            raise ParameterError("box", self.bounds, "Scene box must have positive width and height")

    @property
    def bounds(self) -> tuple[float, float, float, float]:
        return (self.min_x, self.min_y, self.max_x, self.max_y)

    @property
    def diagonal(self) -> float:
        return math.hypot(self.max_x - self.min_x, self.max_y - self.min_y)

    @cached_property
    def polygon(self) -> Polygon:
        return Polygon(
            [
                (self.min_x, self.min_y),
                (self.max_x, self.min_y),
                (self.max_x, self.max_y),
                (self.min_x, self.max_y),
            ]
        )


def _signed_area(ring: Sequence[Point2]) -> float:
    total = 0.0
    for p, q in zip(ring, ring[1:] + ring[:1]):
        total += p.x * q.y - q.x * p.y
    return total / 2.0


def _as_ring(owner: str, raw: Iterable[Point2 | Sequence[float]], label: str) -> tuple[Point2, ...]:
    ring = [Point2.of(p) for p in raw]
    if len(ring) > 1 and ring[0] == ring[-1]:
        ring = ring[:-1]

    if len(ring) < 3:
        raise InvalidRegionError(owner, f"{label} needs at least 3 vertices, got {len(ring)}", "PG.2")

    for p, q in zip(ring, ring[1:] + ring[:1]):
        if p == q:
            raise InvalidRegionError(owner, f"{label} repeats vertex ({p.x}, {p.y})")

    if _signed_area(ring) == 0.0:
        raise InvalidRegionError(owner, f"{label} is degenerate (collinear, zero area)", "PG.2")

    if not LinearRing([p.as_tuple() for p in ring]).is_simple:
        raise InvalidRegionError(owner, f"{label} intersects itself")

    return tuple(ring)


def _as_features(owner: str, raw: Mapping[str, float] | None) -> dict[str, float]:
    features: dict[str, float] = {}
    for key, value in (raw or {}).items():
        number = float(value)
        if not math.isfinite(number):
            raise InvalidRegionError(owner, f"feature '{key}' is not finite")
        features[str(key)] = number
    return features


@dataclass(frozen=True)
class FeaturePatch:
    """A painted part of a region: cells whose representative point falls inside take these features."""

    outer: tuple[Point2, ...]
    holes: tuple[tuple[Point2, ...], ...] = ()
    features: Mapping[str, float] = field(default_factory=dict, hash=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "outer", _as_ring("patch", self.outer, "patch ring"))
        object.__setattr__(
            self, "holes", tuple(_as_ring("patch", h, "patch hole") for h in self.holes)
        )
        object.__setattr__(self, "features", _as_features("patch", self.features))

    @cached_property
    def polygon(self) -> Polygon:
        return Polygon(
            [p.as_tuple() for p in self.outer],
            [[p.as_tuple() for p in hole] for hole in self.holes],
        )


@dataclass(frozen=True)
class Region:
    """A polygonal region with non-zero area, or a closed wireframe ring when ``is_hole_region``."""

    id: str
    outer: tuple[Point2, ...]
    holes: tuple[tuple[Point2, ...], ...] = ()
    is_hole_region: bool = False
    features: Mapping[str, float] = field(default_factory=dict, hash=False)
    patches: tuple[FeaturePatch, ...] = ()

    def __post_init__(self) -> None:
        outer = _as_ring(self.id, self.outer, "outer ring")
        if _signed_area(list(outer)) < 0:
            outer = tuple(reversed(outer))

        holes = []
        for index, raw in enumerate(self.holes):
            hole = _as_ring(self.id, raw, f"hole {index}")
            if _signed_area(list(hole)) > 0:
                hole = tuple(reversed(hole))
            holes.append(hole)

        if self.is_hole_region and holes:
            raise InvalidRegionError(self.id, "a hole region is a single closed ring without holes")

        object.__setattr__(self, "outer", outer)
        object.__setattr__(self, "holes", tuple(holes))
        object.__setattr__(self, "is_hole_region", bool(self.is_hole_region))
        object.__setattr__(self, "features", _as_features(self.id, self.features))
        object.__setattr__(self, "patches", tuple(self.patches))

        polygon = self.polygon
        if not polygon.is_valid:
            raise InvalidRegionError(self.id, explain_validity(polygon))
        if not self.is_hole_region and polygon.area <= 0.0:
            raise InvalidRegionError(self.id, "region has zero area", "PG.2")

    @cached_property
    def polygon(self) -> Polygon:
        return Polygon(
            [p.as_tuple() for p in self.outer],
            [[p.as_tuple() for p in hole] for hole in self.holes],
        )

    @cached_property
    def geometry(self) -> BaseGeometry:
        """Point set of the closed region: the filled polygon, or only its ring for a hole region."""
        if self.is_hole_region:
            return LinearRing([p.as_tuple() for p in self.outer])
        return self.polygon

    @cached_property
    def boundary(self) -> BaseGeometry:
        if self.is_hole_region:
            return LineString([p.as_tuple() for p in self.outer + self.outer[:1]])
        return self.polygon.boundary

    @property
    def has_interior(self) -> bool:
        return not self.is_hole_region

    def feature(self, name: str, default: float = 0.0) -> float:
        return self.features.get(name, default)

    def effective_features(self, at: Point) -> dict[str, float]:
        merged = dict(self.features)
        for patch in self.patches:
            if patch.polygon.covers(at):
                merged.update(patch.features)
                break
        return merged


@dataclass(frozen=True)
class SubregionCell:
    owner: str
    index: tuple[int, int]
    polygon: BaseGeometry
    interior_cell: bool
    features: Mapping[str, float] = field(default_factory=dict, hash=False, compare=False)

    @property
    def key(self) -> tuple[str, tuple[int, int]]:
        return (self.owner, self.index)

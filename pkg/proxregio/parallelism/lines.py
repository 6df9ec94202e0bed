from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from functools import cached_property

from shapely import affinity
from shapely.geometry import LineString, MultiPoint, Polygon
from shapely.geometry.base import BaseGeometry

from proxregio.core.errors import InvalidSpineError
from proxregio.core.guards import require_positive, require_unit_direction
from proxregio.core.settings import ANGLE_TOLERANCE
from proxregio.geometry.primitives import Box, Point2, Region
from proxregio.geometry.shapes import capsule_region, is_convex, region_from_shape

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PhysicalLine:
    """Straight segment of non-zero width."""

    id: str
    start: Point2
    end: Point2
    width: float

    def __post_init__(self) -> None:
        require_positive("width", self.width)
        start, end = Point2.of(self.start), Point2.of(self.end)
        if start == end:
            raise InvalidSpineError(f"line '{self.id}' has coincident end points")
        object.__setattr__(self, "start", start)
        object.__setattr__(self, "end", end)
        object.__setattr__(self, "width", float(self.width))

    @property
    def direction(self) -> tuple[float, float]:
        return require_unit_direction((self.end.x - self.start.x, self.end.y - self.start.y))

    @property
    def length(self) -> float:
        return self.start.distance_to(self.end)

    @cached_property
    def region(self) -> Region:
        return capsule_region(self.id, (self.start, self.end), self.width / 2.0)


def heading(p: Point2, q: Point2) -> float:
    return math.atan2(q.y - p.y, q.x - p.x)


def is_straight(polyline: Sequence[Point2 | Sequence[float]], *, tol_angle: float = ANGLE_TOLERANCE) -> bool:
    """Constant slope: every segment keeps the heading of the first one."""
    pts = [Point2.of(p) for p in polyline]
    if len(pts) < 2:
        raise InvalidSpineError("a line needs at least two points")
    if any(p == q for p, q in zip(pts, pts[1:])):
        raise InvalidSpineError("a line repeats a point")
    first = heading(pts[0], pts[1])
    for p, q in zip(pts[1:], pts[2:]):
        turn = (heading(p, q) - first + math.pi) % (2.0 * math.pi) - math.pi
        if abs(turn) > tol_angle:
            return False
    return True


def supporting_segment(line: PhysicalLine, box: Box) -> BaseGeometry:
    """The spine's supporting line, extended both ways and clipped to the box."""
    ux, uy = line.direction
    reach = box.diagonal + line.length + abs(line.start.x - box.min_x) + abs(line.start.y - box.min_y)
    far = LineString(
        [
            (line.start.x - reach * ux, line.start.y - reach * uy),
            (line.start.x + reach * ux, line.start.y + reach * uy),
        ]
    )
    return far.intersection(box.polygon)


def sweep(region: Region, direction: tuple[float, float], box: Box) -> tuple[BaseGeometry, bool]:
    """Extend a region along ± direction to the box; non-convex input is swept by its hull."""
    ux, uy = require_unit_direction(direction)
    conservative = not is_convex(region)
    base = region.geometry.convex_hull
    if conservative:
        logger.warning("Region '%s' is not convex, sweeping its convex hull", region.id)

    reach = 2.0 * box.diagonal
    ahead = affinity.translate(base, reach * ux, reach * uy)
    behind = affinity.translate(base, -reach * ux, -reach * uy)
    points = MultiPoint(
        [c for g in (base, ahead, behind) for c in _coords(g)]
    )
    return points.convex_hull.intersection(box.polygon), conservative


def _coords(geometry: BaseGeometry) -> list[tuple[float, float]]:
    if isinstance(geometry, Polygon):
        return list(geometry.exterior.coords)
    return list(geometry.coords)


def direction_strips(region: Region, direction: tuple[float, float], width: float) -> tuple[Region, ...]:
    """Cut a region into bands of ``width`` running along ``direction``."""
    require_positive("width", width)
    ux, uy = require_unit_direction(direction)
    nx, ny = -uy, ux

    coords = _coords(region.polygon)
    offsets = [x * nx + y * ny for x, y in coords]
    along = [x * ux + y * uy for x, y in coords]
    low, high = min(offsets), max(offsets)
    a0, a1 = min(along) - 1.0, max(along) + 1.0

    strips = []
    count = max(1, math.ceil((high - low) / width - 1e-9))
    for k in range(count):
        s0, s1 = low + k * width, min(low + (k + 1) * width, high)
        band = Polygon(
            [
                (a0 * ux + s0 * nx, a0 * uy + s0 * ny),
                (a1 * ux + s0 * nx, a1 * uy + s0 * ny),
                (a1 * ux + s1 * nx, a1 * uy + s1 * ny),
                (a0 * ux + s1 * nx, a0 * uy + s1 * ny),
            ]
        )
        piece = region.geometry.intersection(band)
        parts = getattr(piece, "geoms", [piece])
        for m, part in enumerate(p for p in parts if isinstance(p, Polygon) and p.area > 0.0):
            strips.append(region_from_shape(f"{region.id}/strip{k}.{m}", part, features=region.features))
    return tuple(strips)

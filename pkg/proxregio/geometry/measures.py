from __future__ import annotations

from dataclasses import asdict, dataclass
from enum import Enum
from functools import lru_cache

import numpy as np
from shapely.geometry import Point
from shapely.geometry.base import BaseGeometry

from proxregio.core.guards import require_positive
from proxregio.geometry.primitives import Point2, Region


@dataclass(frozen=True)
class RegionMeasure:
    area: float
    perimeter: float
    diameter: float
    centroid: Point2
    interior_area: float

    def to_dict(self) -> dict:
        return asdict(self)


class Part(str, Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    EXTERIOR = "exterior"


@dataclass(frozen=True)
class Contact:
    """Positive-measure common part of two closed point sets."""

    kind: str
    size: float
    shape: BaseGeometry


@lru_cache(maxsize=4096)
def measure(region: Region) -> RegionMeasure:
    pts = np.array([p.as_tuple() for p in region.outer])
    diffs = pts[:, None, :] - pts[None, :, :]
    diameter = float(np.sqrt((diffs**2).sum(axis=-1)).max())

    geom = region.geometry
    centroid = geom.centroid
    if region.is_hole_region:
        # a hole reports its boundary measure as area
        length = float(region.boundary.length)
        return RegionMeasure(
            area=length,
            perimeter=length,
            diameter=diameter,
            centroid=Point2(centroid.x, centroid.y),
            interior_area=0.0,
        )

    area = float(geom.area)
    return RegionMeasure(
        area=area,
        perimeter=float(geom.length),
        diameter=diameter,
        centroid=Point2(centroid.x, centroid.y),
        interior_area=area,
    )


def cech_distance(a: Region, b: Region) -> float:
    return float(a.geometry.distance(b.geometry))


def part_membership(region: Region, p: Point2, eps: float) -> Part:
    require_positive("eps", eps)
    pt = Point(p.x, p.y)
    if region.boundary.distance(pt) <= eps:
        return Part.BOUNDARY
    if region.has_interior and region.polygon.contains(pt):
        return Part.INTERIOR
    return Part.EXTERIOR


def in_closure(region: Region, p: Point2, eps: float) -> bool:
    require_positive("eps", eps)
    return region.geometry.distance(Point(p.x, p.y)) <= eps


def contact(a: BaseGeometry, b: BaseGeometry, eps: float) -> Contact | None:
    if a.is_empty or b.is_empty or not a.intersects(b):
        return None
    common = a.intersection(b)
    if common.area > eps * eps:
        return Contact("area", float(common.area), common)
    if common.length > eps:
        return Contact("segment", float(common.length), common)
    return None

from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Mapping, Sequence

import numpy as np
import shapely
from shapely import affinity
from shapely.geometry import LinearRing, LineString, MultiPoint, MultiPolygon, Polygon
from shapely.geometry.base import BaseGeometry

from proxregio.core.errors import DegenerateHullError, InvalidRegionError
from proxregio.core.guards import require_non_negative, require_positive
from proxregio.core.settings import ARC_SEGMENTS, VERTEX_RADIUS_FACTOR
from proxregio.geometry.primitives import Box, FeaturePatch, Point2, Region

logger = logging.getLogger(__name__)


def region_from_shape(
    region_id: str,
    shape: BaseGeometry,
    *,
    features: Mapping[str, float] | None = None,
    patches: Sequence[FeaturePatch] = (),
) -> Region:
    shape = shapely.remove_repeated_points(shape)
    if isinstance(shape, MultiPolygon):
        parts = sorted(shape.geoms, key=lambda g: g.area, reverse=True)
        if len(parts) > 1 and parts[1].area > 0:
            raise InvalidRegionError(region_id, "shape splits into several polygons")
        shape = parts[0]
    if not isinstance(shape, Polygon) or shape.is_empty:
        raise InvalidRegionError(region_id, f"expected a polygon, got {shape.geom_type}")

    return Region(
        id=region_id,
        outer=tuple(shape.exterior.coords)[:-1],
        holes=tuple(tuple(ring.coords)[:-1] for ring in shape.interiors),
        features=dict(features or {}),
        patches=tuple(patches),
    )


def rectangle_region(
    region_id: str,
    min_x: float,
    min_y: float,
    max_x: float,
    max_y: float,
    *,
    features: Mapping[str, float] | None = None,
    patches: Iterable[FeaturePatch] = (),
) -> Region:
    return Region(
        id=region_id,
        outer=((min_x, min_y), (max_x, min_y), (max_x, max_y), (min_x, max_y)),
        features=dict(features or {}),
        patches=tuple(patches),
    )


def circle_region(
    region_id: str,
    center: Point2,
    radius: float,
    *,
    sides: int = 64,
    features: Mapping[str, float] | None = None,
) -> Region:
    """Regular polygon whose boundary vertices are equidistant from ``center``."""
    require_positive("radius", radius)
    angles = np.linspace(0.0, 2.0 * math.pi, sides, endpoint=False)
    outer = [(center.x + radius * math.cos(t), center.y + radius * math.sin(t)) for t in angles]
    return Region(id=region_id, outer=tuple(outer), features=dict(features or {}))


def point_region(
    region_id: str,
    center: Point2,
    epsilon: float,
    *,
    features: Mapping[str, float] | None = None,
) -> Region:
    """Smallest physical stand-in for a point: a disk of radius epsilon * VERTEX_RADIUS_FACTOR."""
    return circle_region(
        region_id, center, epsilon * VERTEX_RADIUS_FACTOR, sides=16, features=features
    )


def capsule_region(
    region_id: str,
    spine: Sequence[Point2 | Sequence[float]],
    radius: float,
    *,
    closed: bool = False,
    quad_segs: int = ARC_SEGMENTS,
    features: Mapping[str, float] | None = None,
) -> Region:
    """Polyline (or closed loop) thickened by ``radius`` on each side."""
    require_positive("radius", radius)
    coords = [Point2.of(p).as_tuple() for p in spine]
    line = LinearRing(coords) if closed else LineString(coords)
    outer_radius = radius / math.cos(math.pi / (4 * quad_segs))
    return region_from_shape(region_id, line.buffer(outer_radius, quad_segs=quad_segs), features=features)


def dilate_with_flag(
    region: Region,
    radius: float,
    *,
    box: Box | None = None,
    quad_segs: int = ARC_SEGMENTS,
    region_id: str | None = None,
) -> tuple[Region, bool]:
    require_non_negative("radius", radius)
    if radius == 0.0:
        return region, False

    # arc vertices sit on radius / cos(half step) so the polygon contains the true disk sum
    outer_radius = radius / math.cos(math.pi / (4 * quad_segs))
    shape = region.geometry.buffer(outer_radius, quad_segs=quad_segs)

    clipped = False
    if box is not None and not box.polygon.covers(shape):
        shape = shape.intersection(box.polygon)
        clipped = True
        logger.warning("Dilation of region '%s' by %g clipped to the scene box", region.id, radius)

    result = region_from_shape(
        region_id or region.id,
        shape,
        features=region.features,
        patches=region.patches,
    )
    return result, clipped


def dilate(
    region: Region,
    radius: float,
    *,
    box: Box | None = None,
    quad_segs: int = ARC_SEGMENTS,
    region_id: str | None = None,
) -> Region:
    result, _ = dilate_with_flag(region, radius, box=box, quad_segs=quad_segs, region_id=region_id)
    return result


def convex_hull(points: Iterable[Point2 | Sequence[float]], *, region_id: str = "hull") -> Region:
    coords = [Point2.of(p).as_tuple() for p in points]
    if len(coords) < 3:
        raise DegenerateHullError(len(coords))
    hull = MultiPoint(coords).convex_hull
    if not isinstance(hull, Polygon) or hull.area <= 0.0:
        raise DegenerateHullError(len(coords))
    return region_from_shape(region_id, shapely.simplify(hull, 0.0))


def is_convex(region: Region) -> bool:
    # a convex region contains no holes
    if region.holes or region.is_hole_region:
        return False
    pts = np.array([p.as_tuple() for p in region.outer])
    edges = np.roll(pts, -1, axis=0) - pts
    nxt = np.roll(edges, -1, axis=0)
    cross = edges[:, 0] * nxt[:, 1] - edges[:, 1] * nxt[:, 0]
    scale = max(float(np.abs(edges).max()), 1.0) ** 2
    cross = cross[np.abs(cross) > 1e-12 * scale]
    return bool(np.all(cross > 0) or np.all(cross < 0))


def closure_region(region: Region) -> Region:
    if region.is_hole_region:
        return region
    shape = shapely.unary_union([region.geometry, region.boundary])
    return region_from_shape(region.id, shape, features=region.features, patches=region.patches)


def _moved_patch(patch: FeaturePatch, move) -> FeaturePatch:
    shape = move(patch.polygon)
    return FeaturePatch(
        outer=tuple(shape.exterior.coords)[:-1],
        holes=tuple(tuple(r.coords)[:-1] for r in shape.interiors),
        features=patch.features,
    )


def _moved(region: Region, region_id: str | None, move) -> Region:
    patches = tuple(_moved_patch(p, move) for p in region.patches)
    shape = move(region.polygon)
    return Region(
        id=region_id or region.id,
        outer=tuple(shape.exterior.coords)[:-1],
        holes=tuple(tuple(r.coords)[:-1] for r in shape.interiors),
        is_hole_region=region.is_hole_region,
        features=region.features,
        patches=patches,
    )


def translate_region(region: Region, dx: float, dy: float, *, region_id: str | None = None) -> Region:
    return _moved(region, region_id, lambda g: affinity.translate(g, dx, dy))


def rotate_region(
    region: Region,
    angle: float,
    *,
    origin: Point2 | None = None,
    region_id: str | None = None,
) -> Region:
    """Rotate by ``angle`` radians about ``origin`` (default: the polygon centroid)."""
    if origin is None:
        c = region.polygon.centroid
        origin = Point2(c.x, c.y)
    pivot = origin.as_tuple()
    return _moved(region, region_id, lambda g: affinity.rotate(g, angle, origin=pivot, use_radians=True))


def scale_region(
    region: Region,
    factor: float,
    *,
    origin: Point2 | None = None,
    region_id: str | None = None,
) -> Region:
    """Uniform scaling by ``factor`` about ``origin`` (default: the polygon centroid)."""
    require_positive("factor", factor)
    if origin is None:
        c = region.polygon.centroid
        origin = Point2(c.x, c.y)
    pivot = origin.as_tuple()
    return _moved(region, region_id, lambda g: affinity.scale(g, factor, factor, origin=pivot))

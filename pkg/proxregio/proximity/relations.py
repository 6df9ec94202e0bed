from __future__ import annotations

import logging
import math
from collections.abc import Iterable

import shapely
from shapely.geometry import GeometryCollection
from shapely.geometry.base import BaseGeometry

from proxregio.core.errors import ConsistencyError
from proxregio.core.settings import ARC_SEGMENTS
from proxregio.geometry.measures import cech_distance, contact
from proxregio.geometry.primitives import Region
from proxregio.geometry.scene import Scene
from proxregio.geometry.shapes import dilate
from proxregio.proximity.verdicts import Relation, RelationVerdict, set_label

logger = logging.getLogger(__name__)

MAX_WITNESS_QUAD_SEGS = 4096


def union_geometry(regions: tuple[Region, ...]) -> BaseGeometry:
    if not regions:
        return GeometryCollection()
    return shapely.unary_union([r.geometry for r in regions])


def near_sets(a: Iterable[Region], b: Iterable[Region], scene: Scene) -> RelationVerdict:
    """A δ B over finite unions; the empty set is near nothing."""
    a, b = tuple(a), tuple(b)
    if not a or not b:
        return RelationVerdict(Relation.NEAR, False, set_label(a), set_label(b))
    gap = float(union_geometry(a).distance(union_geometry(b)))
    return RelationVerdict(Relation.NEAR, gap <= scene.epsilon, set_label(a), set_label(b), gap)


def strongly_near_sets(a: Iterable[Region], b: Iterable[Region], scene: Scene) -> RelationVerdict:
    a, b = tuple(a), tuple(b)
    if not a or not b:
        return RelationVerdict(Relation.STRONGLY_NEAR, False, set_label(a), set_label(b))
    common = contact(union_geometry(a), union_geometry(b), scene.epsilon)
    return RelationVerdict(
        Relation.STRONGLY_NEAR,
        common is not None,
        set_label(a),
        set_label(b),
        common.shape if common is not None else None,
    )


def near(a: Region, b: Region, scene: Scene) -> RelationVerdict:
    scene.require(a, b)
    return near_sets((a,), (b,), scene)


def far(a: Region, b: Region, scene: Scene) -> RelationVerdict:
    verdict = near(a, b, scene)
    return RelationVerdict(Relation.FAR, not verdict.holds, a.id, b.id, verdict.witness)


def strongly_near(a: Region, b: Region, scene: Scene) -> RelationVerdict:
    """Overlap with positive measure: shared interior area or a shared boundary segment."""
    scene.require(a, b)
    return strongly_near_sets((a,), (b,), scene)


def strongly_far(a: Region, b: Region, scene: Scene) -> RelationVerdict:
    """Far with a verified Efremovič separating region C."""
    scene.require(a, b)
    gap = cech_distance(a, b)
    if gap <= 2.0 * scene.epsilon:
        return RelationVerdict(Relation.STRONGLY_FAR, False, a.id, b.id, gap)
    return RelationVerdict(Relation.STRONGLY_FAR, True, a.id, b.id, ef_witness(a, b, gap, scene))


def ef_witness(a: Region, b: Region, gap: float, scene: Scene) -> Region:
    eps = scene.epsilon
    quad_segs = ARC_SEGMENTS
    while True:
        cos_step = math.cos(math.pi / (4 * quad_segs))
        low, high = eps / cos_step, gap - eps
        if low < high or quad_segs >= MAX_WITNESS_QUAD_SEGS:
            break
        quad_segs *= 2

    # polygon vertices land on outer_radius, its edges stay beyond outer_radius * cos_step
    outer_radius = (low + high) / 2.0
    witness = dilate(
        a,
        outer_radius * cos_step,
        box=scene.box,
        quad_segs=quad_segs,
        region_id=f"C({a.id},{b.id})",
    )

    outside = scene.box.polygon.difference(witness.geometry)
    to_outside = math.inf if outside.is_empty else float(a.geometry.distance(outside))
    to_b = float(witness.geometry.distance(b.geometry))
    if not (to_outside > eps and to_b > eps):
        logger.error(
            "EF witness for %s/%s failed: D(A, X-C)=%g D(C, B)=%g eps=%g",
            a.id, b.id, to_outside, to_b, eps,
        )
        raise ConsistencyError("ef-witness", f"Separating region for '{a.id}' and '{b.id}' did not verify")
    return witness

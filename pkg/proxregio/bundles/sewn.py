from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass

from shapely.ops import unary_union

from proxregio.bundles.fibre import FibreSpace, build_fibre_space
from proxregio.core.errors import PreconditionError
from proxregio.core.guards import require_positive
from proxregio.description.classes import RegionClass
from proxregio.description.registry import ProbeRegistry
from proxregio.geometry.primitives import Box, Region
from proxregio.geometry.scene import Scene
from proxregio.geometry.shapes import (
    capsule_region,
    region_from_shape,
    rotate_region,
    scale_region,
    translate_region,
)
from proxregio.simplicial.sew import SewResult

logger = logging.getLogger(__name__)

SCENE_MARGIN = 1.0
# similar copies differ in size, so the class is described by scale-sensitive shape probes
SEWN_PROBES = ("area", "perimeter", "hole_count")


@dataclass(frozen=True)
class SewnFibres:
    """Similar copies of one sewn shape, laid out in a row, and the fibre space over them."""

    fibres: FibreSpace
    scene: Scene
    copies: tuple[Region, ...]

    def to_dict(self) -> dict:
        return {"copies": [r.id for r in self.copies], "fibres": self.fibres.to_dict()}


def sewn_shape(result: SewResult, shape_id: str, *, bridge_width: float = 0.1) -> Region:
    """A ∪ bridges ∪ B as one planar region, each bridge thickened to ``bridge_width``."""
    require_positive("bridge_width", bridge_width)
    if not result.bridges:
        raise PreconditionError("sewn_shape", "the sew result has no bridges")

    first = result.bridges[0]
    a = result.scene.region(first.anchor_a.owner)
    b = result.scene.region(first.anchor_b.owner)
    planks = [
        capsule_region(f"{shape_id}.plank{n}", (bridge.start, bridge.end), bridge_width / 2).polygon
        for n, bridge in enumerate(result.bridges)
    ]
    shape = unary_union([a.polygon, b.polygon, *planks])
    logger.debug("Sewn shape %s: %d holes", shape_id, len(getattr(shape, "interiors", ())))
    return region_from_shape(shape_id, shape, features={**a.features, **b.features})


def similar_copies(
    shape: Region,
    scales: Sequence[float],
    *,
    prefix: str,
    x: float = 0.0,
    y: float = 0.0,
    gap: float = 1.0,
    angle: float = 0.0,
) -> tuple[Region, ...]:
    """Scaled (and optionally rotated) copies of ``shape`` left to right from (x, y)."""
    if not scales:
        raise PreconditionError("similar_copies", "at least one scale is needed")

    copies = []
    cursor = x
    for n, factor in enumerate(scales):
        copy = scale_region(shape, factor, region_id=f"{prefix}{n}")
        if angle:
            copy = rotate_region(copy, angle)
        min_x, min_y, max_x, _ = copy.polygon.bounds
        copies.append(translate_region(copy, cursor - min_x, y - min_y))
        cursor += max_x - min_x + gap
    return tuple(copies)


def _fitting_box(regions: Sequence[Region]) -> Box:
    bounds = [r.polygon.bounds for r in regions]
    return Box(
        min(b[0] for b in bounds) - SCENE_MARGIN,
        min(b[1] for b in bounds) - SCENE_MARGIN,
        max(b[2] for b in bounds) + SCENE_MARGIN,
        max(b[3] for b in bounds) + SCENE_MARGIN,
    )


def sewn_fibre_space(
    result: SewResult,
    scales: Sequence[float],
    registry: ProbeRegistry | None = None,
    *,
    prefix: str = "S",
    scene: Scene | None = None,
    y: float = 0.0,
    gap: float = 1.0,
    bridge_width: float = 0.1,
) -> SewnFibres:
    """Fibre space over the class of shapes similar to sew(A, B, k).

    The class is represented by one copy per entry of ``scales``. When ``scene`` is
    given the copies are added to it (they must fit its box); otherwise a fresh scene
    is sized around them with the sew scene's epsilon and cell size.
    """
    if registry is None:
        registry = ProbeRegistry.from_kinds(SEWN_PROBES)
    shape = sewn_shape(result, f"{prefix}.shape", bridge_width=bridge_width)
    copies = similar_copies(shape, scales, prefix=prefix, y=y, gap=gap)

    if scene is None:
        scene = Scene(
            copies,
            _fitting_box(copies),
            epsilon=result.scene.epsilon,
            cell_size=result.scene.cell_size,
            registry=registry,
        )
    else:
        scene = scene.with_regions(*copies)

    members = frozenset(copy.id for copy in copies)
    fibres = build_fibre_space(RegionClass(copies[0].id, members, registry), registry, scene)
    logger.info("Sewn class %s: %d copies over %d base vectors", prefix, len(copies), len(fibres.base))
    return SewnFibres(fibres, scene, copies)

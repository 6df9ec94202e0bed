from __future__ import annotations

from collections.abc import Iterable, Sequence
from functools import lru_cache
from typing import Literal

import numpy as np
import shapely
from shapely.geometry.base import BaseGeometry

from proxregio.core.errors import ConfigurationError, ParameterError
from proxregio.core.settings import FEATURE_TOLERANCE
from proxregio.description.registry import FeatureVector, ProbeRegistry
from proxregio.geometry.grid import region_cells
from proxregio.geometry.measures import contact, measure
from proxregio.geometry.primitives import Region, SubregionCell
from proxregio.geometry.scene import UNIVERSE_ID, Scene
from proxregio.proximity.verdicts import Relation, RelationVerdict, set_label


def resolve_registry(scene: Scene, registry: ProbeRegistry | None) -> ProbeRegistry:
    registry = registry or scene.registry
    if registry is None:
        raise ConfigurationError("registry", "Descriptive relations need a probe registry")
    return registry


def _row(region: Region, features, registry: ProbeRegistry) -> list[float]:
    # a stored feature overrides the computed probe of the same name
    return [
        float(features[p.name]) if p.name in features else p.evaluate(region, features)
        for p in registry.probes
    ]


@lru_cache(maxsize=4096)
def describe(region: Region, registry: ProbeRegistry) -> FeatureVector:
    return registry.vector(_row(region, region.features, registry))


def describe_cell(cell: SubregionCell, owner: Region, registry: ProbeRegistry) -> FeatureVector:
    """Cell description: cell features, geometry probes inherited from the owning region."""
    if cell.owner != owner.id:
        raise ParameterError("owner", owner.id, f"Cell {cell.key} does not belong to '{owner.id}'")
    return registry.vector(_row(owner, cell.features, registry))


@lru_cache(maxsize=4096)
def _cell_matrix(
    region: Region, h: float, registry: ProbeRegistry
) -> tuple[tuple[SubregionCell, ...], np.ndarray]:
    cells = region_cells(region, h)
    matrix = np.array([_row(region, c.features, registry) for c in cells], dtype=float)
    matrix = matrix.reshape(len(cells), len(registry))
    matrix.setflags(write=False)
    return cells, matrix


def cell_descriptions(
    regions: Iterable[Region],
    scene: Scene,
    registry: ProbeRegistry,
    *,
    interior_only: bool = False,
) -> tuple[list[SubregionCell], np.ndarray]:
    cells: list[SubregionCell] = []
    blocks = []
    for region in regions:
        owned, matrix = _cell_matrix(region, scene.cell_size, registry)
        if interior_only:
            mask = np.array([c.interior_cell for c in owned], dtype=bool)
            owned = tuple(c for c, keep in zip(owned, mask) if keep)
            matrix = matrix[mask]
        cells.extend(owned)
        blocks.append(matrix)
    if not blocks:
        return cells, np.empty((0, len(registry)))
    return cells, np.vstack(blocks)


def match_matrix(left: np.ndarray, right: np.ndarray, tolerance: float) -> np.ndarray:
    """Boolean (len(left), len(right)) table of componentwise matches."""
    if not len(left) or not len(right):
        return np.zeros((len(left), len(right)), dtype=bool)
    return np.all(np.abs(left[:, None, :] - right[None, :, :]) <= tolerance, axis=2)


def shared_part(
    a: tuple[Region, ...], b: tuple[Region, ...], epsilon: float, interior_only: bool
) -> BaseGeometry | None:
    """Positive-measure common part of two families; only interior overlap when ``interior_only``."""
    if interior_only:
        ga = shapely.unary_union([r.polygon for r in a if r.has_interior])
        gb = shapely.unary_union([r.polygon for r in b if r.has_interior])
        common = contact(ga, gb, epsilon)
        return common.shape if common is not None and common.kind == "area" else None
    common = contact(
        shapely.unary_union([r.geometry for r in a]),
        shapely.unary_union([r.geometry for r in b]),
        epsilon,
    )
    return common.shape if common is not None else None


def _shared_mask(
    cells: list[SubregionCell], common: BaseGeometry | None, epsilon: float, interior_only: bool
) -> np.ndarray:
    """Cells holding members of both sides."""
    if not cells or common is None:
        return np.zeros(len(cells), dtype=bool)
    polygons = np.array([c.polygon for c in cells], dtype=object)
    if interior_only:
        return shapely.area(shapely.intersection(polygons, common)) > epsilon * epsilon
    return shapely.dwithin(polygons, common, epsilon)


def _intersection(
    a: tuple[Region, ...],
    b: tuple[Region, ...],
    scene: Scene,
    registry: ProbeRegistry,
    interior_only: bool,
) -> tuple[SubregionCell, ...]:
    cells_a, desc_a = cell_descriptions(a, scene, registry, interior_only=interior_only)
    cells_b, desc_b = cell_descriptions(b, scene, registry, interior_only=interior_only)
    table = match_matrix(desc_a, desc_b, registry.tolerance)

    # a member of a ∩ b has one description, which both sides see
    common = shared_part(a, b, scene.epsilon, interior_only)
    hits_a = table.any(axis=1) | _shared_mask(cells_a, common, scene.epsilon, interior_only)
    hits_b = table.any(axis=0) | _shared_mask(cells_b, common, scene.epsilon, interior_only)

    found = {c.key: c for c, hit in zip(cells_a, hits_a) if hit}
    found.update({c.key: c for c, hit in zip(cells_b, hits_b) if hit})
    return tuple(found[key] for key in sorted(found))


def descriptive_intersection_sets(
    a: Iterable[Region],
    b: Iterable[Region],
    scene: Scene,
    registry: ProbeRegistry | None = None,
) -> tuple[SubregionCell, ...]:
    return _intersection(tuple(a), tuple(b), scene, resolve_registry(scene, registry), False)


def descriptive_intersection(
    a: Region,
    b: Region,
    scene: Scene,
    registry: ProbeRegistry | None = None,
) -> tuple[SubregionCell, ...]:
    """Cells of a ∪ b whose description occurs among the cell descriptions of both."""
    scene.require(a, b)
    return descriptive_intersection_sets((a,), (b,), scene, registry)


def _is_universe(regions: tuple[Region, ...]) -> bool:
    return any(r.id == UNIVERSE_ID for r in regions)


def _relation_sets(
    relation: Relation,
    a: tuple[Region, ...],
    b: tuple[Region, ...],
    scene: Scene,
    registry: ProbeRegistry | None,
) -> RelationVerdict:
    registry = resolve_registry(scene, registry)
    label_a, label_b = set_label(a), set_label(b)
    if not a or not b:
        return RelationVerdict(relation, False, label_a, label_b)

    interior_only = relation == Relation.DESCRIPTIVELY_STRONGLY_NEAR
    # Φ(X) holds every description, so the universe matches any nonempty family
    if _is_universe(a) or _is_universe(b):
        other = b if _is_universe(a) else a
        cells, _ = cell_descriptions(
            (r for r in other if r.id != UNIVERSE_ID), scene, registry
        )
        return RelationVerdict(relation, True, label_a, label_b, tuple(cells))

    common = _intersection(a, b, scene, registry, interior_only)
    return RelationVerdict(relation, bool(common), label_a, label_b, common or None)


def dnear_sets(
    a: Iterable[Region],
    b: Iterable[Region],
    scene: Scene,
    registry: ProbeRegistry | None = None,
) -> RelationVerdict:
    return _relation_sets(Relation.DESCRIPTIVELY_NEAR, tuple(a), tuple(b), scene, registry)


def dsnear_sets(
    a: Iterable[Region],
    b: Iterable[Region],
    scene: Scene,
    registry: ProbeRegistry | None = None,
) -> RelationVerdict:
    return _relation_sets(Relation.DESCRIPTIVELY_STRONGLY_NEAR, tuple(a), tuple(b), scene, registry)


def dnear(a: Region, b: Region, scene: Scene, registry: ProbeRegistry | None = None) -> RelationVerdict:
    scene.require(a, b)
    return dnear_sets((a,), (b,), scene, registry)


def dsnear(a: Region, b: Region, scene: Scene, registry: ProbeRegistry | None = None) -> RelationVerdict:
    """Descriptive strong nearness: some interior cells of a and b share a description."""
    scene.require(a, b)
    return dsnear_sets((a,), (b,), scene, registry)


def cell_matches_region(
    cell: SubregionCell,
    owner: Region,
    region: Region,
    scene: Scene,
    registry: ProbeRegistry | None = None,
    *,
    interior_only: bool = False,
) -> bool:
    """{x} δ_Φ A at cell granularity (or {x} ⩕_Φ A with ``interior_only``)."""
    registry = resolve_registry(scene, registry)
    row = describe_cell(cell, owner, registry).as_array()[None, :]
    _, matrix = cell_descriptions((region,), scene, registry, interior_only=interior_only)
    return bool(match_matrix(row, matrix, registry.tolerance).any())


def cells_dnear(
    x: SubregionCell,
    x_owner: Region,
    y: SubregionCell,
    y_owner: Region,
    registry: ProbeRegistry,
) -> bool:
    return describe_cell(x, x_owner, registry).matches(
        describe_cell(y, y_owner, registry), registry.tolerance
    )


def descriptively_congruent(a: Region, b: Region, registry: ProbeRegistry) -> bool:
    return describe(a, registry).matches(describe(b, registry), registry.tolerance)


def shape_dnear(
    a: Region,
    b: Region,
    *,
    by: Literal["perimeter", "area"] = "perimeter",
    tolerance: float = FEATURE_TOLERANCE,
) -> RelationVerdict:
    """Shape clause of descriptive nearness: equal boundary perimeters or equal interior areas."""
    if by == "perimeter":
        gap = abs(measure(a).perimeter - measure(b).perimeter)
    elif by == "area":
        gap = abs(measure(a).interior_area - measure(b).interior_area)
    else:
        raise ParameterError("by", by, f"Unknown shape comparison '{by}'")
    return RelationVerdict(Relation.DESCRIPTIVELY_NEAR, gap <= tolerance, a.id, b.id, gap)


def describe_polytope(vertices: Sequence[Region], registry: ProbeRegistry) -> tuple[FeatureVector, ...]:
    return tuple(describe(v, registry) for v in vertices)

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from proxregio.core.errors import PreconditionError
from proxregio.core.guards import require_positive
from proxregio.description.descriptive import describe, dnear, match_matrix, resolve_registry
from proxregio.description.registry import ProbeRegistry
from proxregio.geometry.primitives import Region
from proxregio.geometry.scene import Scene


@dataclass(frozen=True)
class RegionClass:
    """𝓡_A: the scene regions descriptively near a representative."""

    representative: str
    members: frozenset[str]
    registry: ProbeRegistry

    def __post_init__(self) -> None:
        object.__setattr__(self, "members", frozenset(self.members))
        if self.representative not in self.members:
            raise PreconditionError("region-class", f"representative '{self.representative}' must be a member")

    @property
    def sorted_members(self) -> tuple[str, ...]:
        return tuple(sorted(self.members))

    def regions(self, scene: Scene) -> tuple[Region, ...]:
        return tuple(scene.region(m) for m in self.sorted_members)

    def to_dict(self) -> dict:
        return {"representative": self.representative, "members": list(self.sorted_members)}


def class_of_regions(scene: Scene, rep: Region, registry: ProbeRegistry | None = None) -> RegionClass:
    registry = resolve_registry(scene, registry)
    scene.require(rep)
    members = {rep.id}
    members.update(r.id for r in scene.regions if r.id != rep.id and dnear(rep, r, scene, registry))
    return RegionClass(rep.id, frozenset(members), registry)


def classes_dnear(
    ca: RegionClass, cb: RegionClass, scene: Scene, registry: ProbeRegistry | None = None
) -> bool:
    registry = resolve_registry(scene, registry)
    return any(
        dnear(a, b, scene, registry) for a in ca.regions(scene) for b in cb.regions(scene)
    )


def phi_distance(a: Region, b: Region, registry: ProbeRegistry) -> float:
    return describe(a, registry).distance(describe(b, registry))


def phi_bounded(regions: Iterable[Region], anchor: Region, eps: float, registry: ProbeRegistry) -> bool:
    """True when every description lies strictly within ``eps`` of the anchor's."""
    require_positive("eps", eps)
    return all(phi_distance(r, anchor, registry) < eps for r in regions)


def phi_bounded_set(
    universe: Iterable[Region], anchor: Region, eps: float, registry: ProbeRegistry
) -> frozenset[str]:
    require_positive("eps", eps)
    return frozenset(r.id for r in universe if phi_distance(r, anchor, registry) < eps)


def phi_closure(
    family: Iterable[Region], universe: Iterable[Region], registry: ProbeRegistry
) -> frozenset[str]:
    """Descriptive closure: regions of the universe whose description matches some family member."""
    family, universe = tuple(family), tuple(universe)
    if not family or not universe:
        return frozenset()
    inside = np.array([describe(r, registry).values for r in family])
    candidates = np.array([describe(r, registry).values for r in universe])
    hits = match_matrix(candidates, inside, registry.tolerance).any(axis=1)
    return frozenset(r.id for r, hit in zip(universe, hits) if hit)

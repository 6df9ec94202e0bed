from __future__ import annotations

import logging
from collections.abc import Mapping
from dataclasses import dataclass, field

from proxregio.core.errors import ConsistencyError, PreconditionError
from proxregio.description.classes import RegionClass
from proxregio.description.descriptive import describe
from proxregio.description.registry import FeatureVector, ProbeRegistry
from proxregio.geometry.scene import Scene
from proxregio.parallelism.predicates import ParallelVerdict, classes_parallel

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FibreSpace:
    """(𝓡_A, Φ, B): a class, its description map and the image of that map."""

    total: RegionClass
    projection: Mapping[str, FeatureVector] = field(hash=False)
    base: tuple[FeatureVector, ...] = ()
    # member id -> index of the base vector it projects to
    assignment: Mapping[str, int] = field(default_factory=dict, hash=False)

    def __post_init__(self) -> None:
        if set(self.projection) != set(self.total.members):
            raise ConsistencyError("fibre-projection", "Projection must be defined on every class member")
        if set(self.assignment.values()) != set(range(len(self.base))):
            raise ConsistencyError("fibre-base", "Base must be the image of the projection")

    @property
    def tolerance(self) -> float:
        return self.total.registry.tolerance

    def to_dict(self) -> dict:
        return {
            "class": self.total.to_dict(),
            "base": [list(v.values) for v in self.base],
            "fibres": [sorted(fibre(self, v) or ()) for v in self.base],
        }


def build_fibre_space(region_class: RegionClass, registry: ProbeRegistry, scene: Scene) -> FibreSpace:
    if not region_class.members:
        raise PreconditionError("build_fibre_space", "the class is empty")

    projection: dict[str, FeatureVector] = {}
    base: list[FeatureVector] = []
    assignment: dict[str, int] = {}
    for member in region_class.sorted_members:
        vector = describe(scene.region(member), registry)
        projection[member] = vector
        for n, known in enumerate(base):
            if vector.matches(known, registry.tolerance):
                assignment[member] = n
                break
        else:
            assignment[member] = len(base)
            base.append(vector)

    total = RegionClass(region_class.representative, region_class.members, registry)
    return FibreSpace(total, projection, tuple(base), assignment)


def fibre(fs: FibreSpace, x: FeatureVector) -> frozenset[str] | None:
    """Φ⁻¹(x), or None when x is not a base vector."""
    for n, vector in enumerate(fs.base):
        if vector.matches(x, fs.tolerance):
            return frozenset(m for m, index in fs.assignment.items() if index == n)
    return None


def is_sheaf(fs: FibreSpace) -> bool:
    return len(fs.base) == len(fs.total.members) and all(
        len(fibre(fs, v) or ()) == 1 for v in fs.base
    )


def fibre_union(fs: FibreSpace) -> frozenset[str]:
    """Φ⁻¹(B): the union of the fibres over every base vector."""
    return frozenset().union(*(fibre(fs, v) or frozenset() for v in fs.base))


def bundles_parallel(
    fa: FibreSpace,
    fb: FibreSpace,
    scene: Scene,
    direction: tuple[float, float],
    descriptive: bool = False,
) -> ParallelVerdict:
    for fs in (fa, fb):
        if not is_sheaf(fs):
            raise PreconditionError(
                "bundles_parallel", f"class of '{fs.total.representative}' is not a sheaf"
            )
        # Φ⁻¹(B) is the whole class
        if fibre_union(fs) != fs.total.members:
            logger.error("Fibre union of %s differs from its class", fs.total.representative)
            raise ConsistencyError("bundle-fibres")

    return classes_parallel(fa.total, fb.total, scene, fa.total.registry, direction, descriptive)

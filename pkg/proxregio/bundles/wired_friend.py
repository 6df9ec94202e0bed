from __future__ import annotations

from dataclasses import dataclass, field

from proxregio.core.errors import PreconditionError
from proxregio.core.guards import require_positive
from proxregio.description.descriptive import describe
from proxregio.description.registry import FeatureVector, ProbeRegistry
from proxregio.geometry.primitives import Region


@dataclass(frozen=True)
class ShapeDescriptor:
    """g(str A) together with the ball B_{r,k} it is expected to stay in."""

    vector: FeatureVector
    ball_radius: float

    def __post_init__(self) -> None:
        require_positive("ball_radius", self.ball_radius)

    @property
    def k(self) -> int:
        return len(self.vector)

    def contains(self, other: FeatureVector) -> bool:
        return self.vector.distance(other) <= self.ball_radius


@dataclass(frozen=True)
class WiredFriend:
    vector: FeatureVector
    in_ball: bool

    def to_dict(self) -> dict:
        return {"vector": list(self.vector.values), "in_ball": self.in_ball}


def _require_invariant(registry: ProbeRegistry) -> None:
    if not registry.congruence_invariant:
        raise PreconditionError("wired_friend_map", "registry has probes that change under rigid motion")


def wired_friend_map(
    region: Region,
    registry: ProbeRegistry,
    r: float,
    reference: ShapeDescriptor | FeatureVector | None = None,
) -> WiredFriend:
    """Map a shape to its description; without a reference it is its own first occurrence."""
    require_positive("r", r)
    _require_invariant(registry)
    vector = describe(region, registry)
    if reference is None:
        return WiredFriend(vector, True)
    if isinstance(reference, FeatureVector):
        reference = ShapeDescriptor(reference, r)
    return WiredFriend(vector, vector.distance(reference.vector) <= r)


@dataclass
class WiredFriendTracker:
    """Remembers the first occurrence of each named shape."""

    registry: ProbeRegistry
    r: float
    first: dict[str, ShapeDescriptor] = field(default_factory=dict)

    def __post_init__(self) -> None:
        require_positive("r", self.r)
        _require_invariant(self.registry)

    def observe(self, key: str, region: Region) -> WiredFriend:
        known = self.first.get(key)
        result = wired_friend_map(region, self.registry, self.r, known)
        if known is None:
            self.first[key] = ShapeDescriptor(result.vector, self.r)
        return result

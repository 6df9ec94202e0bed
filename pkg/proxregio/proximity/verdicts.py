from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any

from shapely.geometry.base import BaseGeometry

from proxregio.geometry.primitives import Region, SubregionCell


class Relation(str, Enum):
    NEAR = "near"
    STRONGLY_NEAR = "strongly_near"
    FAR = "far"
    STRONGLY_FAR = "strongly_far"
    DESCRIPTIVELY_NEAR = "dnear"
    DESCRIPTIVELY_STRONGLY_NEAR = "dsnear"


@dataclass(frozen=True)
class RelationVerdict:
    relation: Relation
    holds: bool
    a: str
    b: str
    witness: Any = None

    def __bool__(self) -> bool:
        return self.holds

    def witness_text(self) -> str:
        return describe_witness(self.witness)

    def to_dict(self) -> dict:
        return {
            "relation": self.relation.value,
            "holds": self.holds,
            "a": self.a,
            "b": self.b,
            "witness": self.witness_text(),
        }


def describe_witness(witness: Any) -> str:
    if witness is None:
        return "none"
    if isinstance(witness, float):
        return f"gap={witness:.12g}"
    if isinstance(witness, Region):
        return f"region {witness.id} area={witness.polygon.area:.12g}"
    if isinstance(witness, BaseGeometry):
        size = witness.area if witness.area > 0 else witness.length
        return f"{witness.geom_type.lower()} measure={size:.12g}"
    if isinstance(witness, tuple) and all(isinstance(c, SubregionCell) for c in witness):
        return f"{len(witness)} cells"
    return str(witness)


def set_label(regions: tuple[Region, ...]) -> str:
    return "+".join(r.id for r in regions) if regions else "{}"

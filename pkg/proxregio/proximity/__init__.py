from proxregio.proximity.relations import (
    ef_witness,
    far,
    near,
    near_sets,
    strongly_far,
    strongly_near,
    strongly_near_sets,
)
from proxregio.proximity.verdicts import Relation, RelationVerdict

__all__ = [
    "Relation",
    "RelationVerdict",
    "ef_witness",
    "far",
    "near",
    "near_sets",
    "strongly_far",
    "strongly_near",
    "strongly_near_sets",
]

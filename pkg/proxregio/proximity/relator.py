from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

from proxregio.core.errors import ConfigurationError
from proxregio.description.registry import ProbeRegistry
from proxregio.geometry.primitives import Region
from proxregio.geometry.scene import Scene
from proxregio.proximity.relations import far, near, strongly_far, strongly_near
from proxregio.proximity.verdicts import Relation, RelationVerdict

Evaluator = Callable[[Region, Region, Scene], RelationVerdict]

SPATIAL_RELATIONS = (Relation.NEAR, Relation.STRONGLY_NEAR, Relation.FAR, Relation.STRONGLY_FAR)

# (premise, conclusion, negate conclusion, label)
IMPLICATIONS = (
    (Relation.STRONGLY_NEAR, Relation.NEAR, False, "Prop2.2: strongly_near => near"),
    (Relation.STRONGLY_NEAR, Relation.DESCRIPTIVELY_NEAR, False, "Prop2.2: strongly_near => dnear"),
    (Relation.DESCRIPTIVELY_STRONGLY_NEAR, Relation.DESCRIPTIVELY_NEAR, False, "Prop2.4: dsnear => dnear"),
    (Relation.STRONGLY_FAR, Relation.NEAR, True, "EF: strongly_far => not near"),
    (Relation.FAR, Relation.NEAR, True, "far => not near"),
)


@dataclass(frozen=True)
class ProximalRelator:
    relations: tuple[Relation, ...] = SPATIAL_RELATIONS
    registry: ProbeRegistry | None = None

    def __post_init__(self) -> None:
        relations = tuple(Relation(r) for r in self.relations)
        if not relations:
            raise ConfigurationError("relator", "A proximal relator needs at least one relation")
        if Relation.NEAR not in relations:
            raise ConfigurationError("relator", "A proximal relator must contain the near relation")
        if len(set(relations)) != len(relations):
            raise ConfigurationError("relator", "Relator relations must be distinct")
        object.__setattr__(self, "relations", relations)


@dataclass(frozen=True)
class RelatorEvaluation:
    verdicts: tuple[RelationVerdict, ...]
    violations: tuple[str, ...]

    def verdict(self, relation: Relation) -> RelationVerdict | None:
        for verdict in self.verdicts:
            if verdict.relation == relation:
                return verdict
        return None

    def holds(self, relation: Relation) -> bool:
        verdict = self.verdict(relation)
        return bool(verdict and verdict.holds)

    def to_dict(self) -> dict:
        return {
            "verdicts": [v.to_dict() for v in self.verdicts],
            "violations": list(self.violations),
        }


def evaluator_for(relation: Relation, registry: ProbeRegistry | None) -> Evaluator:
    if relation == Relation.NEAR:
        return near
    if relation == Relation.STRONGLY_NEAR:
        return strongly_near
    if relation == Relation.FAR:
        return far
    if relation == Relation.STRONGLY_FAR:
        return strongly_far

    from proxregio.description.descriptive import dnear, dsnear

    if relation == Relation.DESCRIPTIVELY_NEAR:
        return lambda a, b, scene: dnear(a, b, scene, registry)
    if relation == Relation.DESCRIPTIVELY_STRONGLY_NEAR:
        return lambda a, b, scene: dsnear(a, b, scene, registry)

    raise ConfigurationError(str(relation))


def relator_eval(relator: ProximalRelator, a: Region, b: Region, scene: Scene) -> RelatorEvaluation:
    registry = relator.registry or scene.registry
    verdicts = tuple(evaluator_for(r, registry)(a, b, scene) for r in relator.relations)
    by_relation = {v.relation: v.holds for v in verdicts}

    violations = []
    for premise, conclusion, negate, label in IMPLICATIONS:
        if premise not in by_relation or conclusion not in by_relation:
            continue
        if by_relation[premise] and by_relation[conclusion] == negate:
            violations.append(label)
    return RelatorEvaluation(verdicts, tuple(violations))

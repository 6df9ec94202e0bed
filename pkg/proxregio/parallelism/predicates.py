from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Any

from shapely.geometry import LineString

from proxregio.core.errors import PreconditionError
from proxregio.core.settings import ANGLE_TOLERANCE
from proxregio.description.classes import RegionClass
from proxregio.description.descriptive import dnear
from proxregio.description.registry import ProbeRegistry
from proxregio.geometry.primitives import Region
from proxregio.geometry.scene import Scene
from proxregio.parallelism.lines import PhysicalLine, supporting_segment, sweep


class ParallelKind(str, Enum):
    LOCAL = "local"
    PROXIMAL = "proximal"
    DESCRIPTIVE = "descriptive"
    CLASS_LEVEL = "class_level"


@dataclass(frozen=True)
class ParallelVerdict:
    kind: ParallelKind
    holds: bool
    a: str
    b: str
    evidence: Any = None
    conservative: bool = False

    def __bool__(self) -> bool:
        return self.holds

    def evidence_text(self) -> str:
        evidence = self.evidence
        if evidence is None:
            return "none"
        if isinstance(evidence, float):
            return f"gap={evidence:.12g}"
        if isinstance(evidence, LineString):
            (x0, y0), (x1, y1) = evidence.coords
            return f"transversal ({x0:.12g},{y0:.12g})-({x1:.12g},{y1:.12g})"
        if isinstance(evidence, tuple) and len(evidence) == 2 and all(isinstance(e, str) for e in evidence):
            return f"failing pair {evidence[0]}/{evidence[1]}"
        return str(evidence)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "holds": self.holds,
            "a": self.a,
            "b": self.b,
            "evidence": self.evidence_text(),
            "conservative": self.conservative,
        }


def _angle_between(u: tuple[float, float], v: tuple[float, float]) -> float:
    """Angle between two undirected directions, in [0, π/2]."""
    cross = u[0] * v[1] - u[1] * v[0]
    dot = u[0] * v[0] + u[1] * v[1]
    return math.atan2(abs(cross), abs(dot))


def locally_parallel(a: PhysicalLine, b: PhysicalLine, tol_angle: float = ANGLE_TOLERANCE) -> ParallelVerdict:
    """Parallel when a transversal meets both spines at right angles."""
    u = a.direction
    if _angle_between(u, b.direction) > tol_angle:
        return ParallelVerdict(ParallelKind.LOCAL, False, a.id, b.id)

    def along(p) -> float:
        return (p.x - a.start.x) * u[0] + (p.y - a.start.y) * u[1]

    tb = sorted((along(b.start), along(b.end)))
    low, high = max(0.0, tb[0]), min(a.length, tb[1])
    if low > high:
        return ParallelVerdict(ParallelKind.LOCAL, False, a.id, b.id)

    t = (low + high) / 2.0
    foot_a = (a.start.x + t * u[0], a.start.y + t * u[1])
    w = b.direction
    s = (foot_a[0] - b.start.x) * w[0] + (foot_a[1] - b.start.y) * w[1]
    foot_b = (b.start.x + s * w[0], b.start.y + s * w[1])

    transversal = (foot_b[0] - foot_a[0], foot_b[1] - foot_a[1])
    if math.hypot(*transversal) == 0.0:
        return ParallelVerdict(ParallelKind.LOCAL, False, a.id, b.id)

    right = math.pi / 2.0
    holds = (
        abs(_angle_between(transversal, u) - right) <= tol_angle
        and abs(_angle_between(transversal, w) - right) <= tol_angle
    )
    return ParallelVerdict(
        ParallelKind.LOCAL, holds, a.id, b.id, LineString([foot_a, foot_b]) if holds else None
    )


def proximal_parallel(a: PhysicalLine, b: PhysicalLine, scene: Scene) -> ParallelVerdict:
    """Lines extended to the scene box stay strongly far apart."""
    ext_a = supporting_segment(a, scene.box)
    ext_b = supporting_segment(b, scene.box)
    for line, extended in ((a, ext_a), (b, ext_b)):
        if extended.is_empty:
            raise PreconditionError("proximal_parallel", f"line '{line.id}' never crosses the scene box")
    gap = float(ext_a.distance(ext_b)) - (a.width + b.width) / 2.0
    return ParallelVerdict(ParallelKind.PROXIMAL, gap > 2.0 * scene.epsilon, a.id, b.id, gap)


def parallel_regions(
    a: Region, b: Region, scene: Scene, direction: tuple[float, float]
) -> ParallelVerdict:
    swept_a, loose_a = sweep(a, direction, scene.box)
    swept_b, loose_b = sweep(b, direction, scene.box)
    gap = float(swept_a.distance(swept_b))
    return ParallelVerdict(
        ParallelKind.PROXIMAL,
        gap > 2.0 * scene.epsilon,
        a.id,
        b.id,
        gap,
        conservative=loose_a or loose_b,
    )


def descriptively_parallel(
    a: Region,
    b: Region,
    scene: Scene,
    registry: ProbeRegistry | None,
    direction: tuple[float, float],
) -> ParallelVerdict:
    spatial = parallel_regions(a, b, scene, direction)
    if not spatial:
        return ParallelVerdict(
            ParallelKind.DESCRIPTIVE, False, a.id, b.id, spatial.evidence, spatial.conservative
        )
    matched = dnear(a, b, scene, registry)
    return ParallelVerdict(
        ParallelKind.DESCRIPTIVE,
        matched.holds,
        a.id,
        b.id,
        matched.witness_text() if matched else "no matching description",
        spatial.conservative,
    )


def classes_parallel(
    ca: RegionClass,
    cb: RegionClass,
    scene: Scene,
    registry: ProbeRegistry | None,
    direction: tuple[float, float],
    descriptive: bool = False,
) -> ParallelVerdict:
    """Every cross pair of the two classes must be parallel."""
    shared = ca.members & cb.members
    if shared:
        raise PreconditionError(
            "classes_parallel", f"classes share members: {', '.join(sorted(shared))}"
        )

    conservative = False
    for a in ca.regions(scene):
        for b in cb.regions(scene):
            if descriptive:
                verdict = descriptively_parallel(a, b, scene, registry, direction)
            else:
                verdict = parallel_regions(a, b, scene, direction)
            conservative = conservative or verdict.conservative
            if not verdict:
                return ParallelVerdict(
                    ParallelKind.CLASS_LEVEL, False, ca.representative, cb.representative,
                    (a.id, b.id), conservative,
                )
    pairs = len(ca.members) * len(cb.members)
    return ParallelVerdict(
        ParallelKind.CLASS_LEVEL, True, ca.representative, cb.representative,
        f"{pairs} pairs parallel", conservative,
    )

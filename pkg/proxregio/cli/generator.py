from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from proxregio.core.settings import DEFAULT_CELL_SIZE, DEFAULT_EPSILON
from proxregio.description.registry import ProbeRegistry
from proxregio.geometry.primitives import Box, FeaturePatch, Point2, Region
from proxregio.geometry.scene import Scene
from proxregio.geometry.shapes import convex_hull

PALETTE: dict[str, tuple[float, float, float]] = {
    "red": (1.0, 0.0, 0.0),
    "green": (0.0, 1.0, 0.0),
    "blue": (0.0, 0.0, 1.0),
}

GENERATED_BOX = Box(0.0, 0.0, 12.0, 12.0)
ANCHOR = Point2(3.5, 6.0)


class Arrangement(str, Enum):
    OVERLAPPING = "overlapping"
    TOUCHING = "touching"
    FAR = "far"
    STRONGLY_FAR = "strongly_far"


ARRANGEMENTS = tuple(Arrangement)


def color_features(name: str) -> dict[str, float]:
    r, g, b = PALETTE[name]
    return {"color_r": r, "color_g": g, "color_b": b}


def color_registry() -> ProbeRegistry:
    return ProbeRegistry.from_kinds(("color_r", "color_g", "color_b"))


def _pick_color(rng: np.random.Generator) -> str:
    return str(rng.choice(sorted(PALETTE)))


def random_convex_region(
    rng: np.random.Generator,
    region_id: str,
    center: Point2,
    *,
    radius: tuple[float, float] = (0.8, 1.5),
    features: dict[str, float] | None = None,
) -> Region:
    """Convex polygon with 4 to 8 vertices that keeps ``center`` well inside."""
    n = int(rng.integers(4, 9))
    step = 2.0 * math.pi / n
    angles = step * np.arange(n) + rng.uniform(-0.3, 0.3, size=n) * step
    r = rng.uniform(*radius)
    points = [(center.x + r * math.cos(t), center.y + r * math.sin(t)) for t in angles]
    hull = convex_hull(points, region_id=region_id)
    return Region(hull.id, hull.outer, features=features or {})


def outward_slab(
    region_id: str,
    region: Region,
    offset: float,
    thickness: float,
    *,
    features: dict[str, float] | None = None,
) -> Region:
    """Rectangle standing on the longest edge of a convex region, ``offset`` away from it."""
    ring = region.outer
    edges = list(zip(ring, ring[1:] + ring[:1]))
    p, q = max(edges, key=lambda e: e[0].distance_to(e[1]))
    length = p.distance_to(q)
    # outer rings run counterclockwise, so the outside lies to the right of each edge
    nx, ny = (q.y - p.y) / length, -(q.x - p.x) / length
    near_off, far_off = offset, offset + thickness
    return Region(
        region_id,
        (
            (p.x + near_off * nx, p.y + near_off * ny),
            (q.x + near_off * nx, q.y + near_off * ny),
            (q.x + far_off * nx, q.y + far_off * ny),
            (p.x + far_off * nx, p.y + far_off * ny),
        ),
        features=features or {},
    )


def _half_patch(region: Region, color: str) -> FeaturePatch:
    min_x, min_y, max_x, max_y = region.polygon.bounds
    mid = (min_x + max_x) / 2.0
    return FeaturePatch(
        outer=((min_x, min_y), (mid, min_y), (mid, max_y), (min_x, max_y)),
        features=color_features(color),
    )


@dataclass(frozen=True)
class Trial:
    index: int
    arrangement: Arrangement
    scene: Scene
    a: Region
    b: Region
    c: Region


def generate_trial(rng: np.random.Generator, index: int, *, epsilon: float = DEFAULT_EPSILON) -> Trial:
    arrangement = ARRANGEMENTS[index % len(ARRANGEMENTS)]

    a = random_convex_region(rng, "A", ANCHOR, features=color_features(_pick_color(rng)))
    if rng.random() < 0.5:
        a = Region(a.id, a.outer, features=a.features, patches=(_half_patch(a, _pick_color(rng)),))

    b_features = color_features(_pick_color(rng))
    if arrangement == Arrangement.OVERLAPPING:
        shift = rng.uniform(-0.1, 0.1, size=2)
        center = Point2(ANCHOR.x + shift[0], ANCHOR.y + shift[1])
        b = random_convex_region(rng, "B", center, features=b_features)
    elif arrangement == Arrangement.TOUCHING:
        b = outward_slab("B", a, 0.0, rng.uniform(0.3, 1.0), features=b_features)
    elif arrangement == Arrangement.FAR:
        b = outward_slab("B", a, 1.5 * epsilon, rng.uniform(0.3, 1.0), features=b_features)
    else:
        center = Point2(ANCHOR.x + rng.uniform(5.0, 6.0), ANCHOR.y + rng.uniform(-2.0, 2.0))
        b = random_convex_region(rng, "B", center, features=b_features)

    center = Point2(*rng.uniform(2.0, 10.0, size=2))
    c = random_convex_region(
        rng, "C", center, radius=(0.5, 1.2), features=color_features(_pick_color(rng))
    )

    scene = Scene(
        regions=(a, b, c),
        box=GENERATED_BOX,
        epsilon=epsilon,
        cell_size=DEFAULT_CELL_SIZE,
        registry=color_registry(),
    )
    return Trial(index, arrangement, scene, a, b, c)


def generate_scene(seed: int, count: int = 6) -> Scene:
    """A scene of ``count`` scattered coloured convex regions, used for demos and rendering."""
    rng = np.random.default_rng(seed)
    regions = []
    for n in range(count):
        center = Point2(*rng.uniform(1.5, 10.5, size=2))
        regions.append(
            random_convex_region(rng, f"R{n}", center, features=color_features(_pick_color(rng)))
        )
    return Scene(tuple(regions), GENERATED_BOX, registry=color_registry())

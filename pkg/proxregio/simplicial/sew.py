from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
import shapely
from shapely.geometry import LineString, Point
from shapely.ops import nearest_points

from proxregio.core.errors import CapacityError, ConsistencyError, PreconditionError
from proxregio.core.guards import require_positive
from proxregio.core.settings import ANGLE_TOLERANCE, RECTANGLE_SIDE_TOLERANCE, VERTEX_RADIUS_FACTOR
from proxregio.geometry.grid import region_cells
from proxregio.geometry.measures import cech_distance
from proxregio.geometry.primitives import Point2, Region, SubregionCell
from proxregio.geometry.scene import Scene
from proxregio.geometry.shapes import capsule_region
from proxregio.proximity.relations import strongly_near_sets
from proxregio.simplicial.complex import Simplex, SimplicialComplex

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Bridge:
    edge: Simplex
    anchor_a: SubregionCell
    anchor_b: SubregionCell
    start: Point2
    end: Point2
    region: Region

    @property
    def length(self) -> float:
        return self.start.distance_to(self.end)

    def to_dict(self) -> dict:
        return {
            "edge": list(self.edge.vertices),
            "anchor_a": f"{self.anchor_a.owner}[{self.anchor_a.index[0]},{self.anchor_a.index[1]}]",
            "anchor_b": f"{self.anchor_b.owner}[{self.anchor_b.index[0]},{self.anchor_b.index[1]}]",
            "length": self.length,
        }


@dataclass(frozen=True)
class SewResult:
    complex: SimplicialComplex
    bridges: tuple[Bridge, ...]
    k: int
    scene: Scene
    rectangle: bool = False

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "rectangle": self.rectangle,
            "bridges": [b.to_dict() for b in self.bridges],
            "complex": self.complex.to_dict(),
        }


def _boundary_cells(region: Region, h: float) -> list[SubregionCell]:
    return [cell for cell in region_cells(region, h) if not cell.interior_cell]


def _anchor_pairs(a: Region, b: Region, h: float) -> list[tuple[float, SubregionCell, SubregionCell]]:
    cells_a, cells_b = _boundary_cells(a, h), _boundary_cells(b, h)
    polys_a = np.array([c.polygon for c in cells_a], dtype=object)
    polys_b = np.array([c.polygon for c in cells_b], dtype=object)
    gaps = shapely.distance(polys_a[:, None], polys_b[None, :])

    pairs = [
        (float(gaps[i, j]), cells_a[i], cells_b[j])
        for i in range(len(cells_a))
        for j in range(len(cells_b))
    ]
    # closest facing cells first, ties by lexicographic cell index
    pairs.sort(key=lambda p: (p[0], p[1].index, p[2].index))
    return pairs


def _bridge_segment(cell_a: SubregionCell, cell_b: SubregionCell) -> LineString:
    start = nearest_points(cell_a.polygon, cell_b.polygon.centroid)[0]
    end = nearest_points(cell_b.polygon, start)[0]
    return LineString([start, end])


def _passes_through(segment: LineString, region: Region, epsilon: float) -> bool:
    return segment.intersection(region.polygon).length > epsilon


def _side_chain(region: Region, anchors: dict[str, Point2]) -> list[str]:
    """Anchor vertices of one region in boundary order, cut open at the widest gap."""
    ring = region.polygon.exterior
    position = {v: float(ring.project(Point(p.as_tuple()), normalized=True)) for v, p in anchors.items()}
    ordered = sorted(anchors, key=lambda v: (position[v], v))
    if len(ordered) < 3:
        return ordered
    t = np.array([position[v] for v in ordered])
    gaps = np.diff(np.append(t, t[0] + 1.0))
    cut = (int(np.argmax(gaps)) + 1) % len(ordered)
    return ordered[cut:] + ordered[:cut]


def side_edges(region: Region, anchors: dict[str, Point2]) -> tuple[Simplex, ...]:
    """Edges standing in for ``region`` inside the sewn complex: consecutive anchors joined."""
    chain = _side_chain(region, anchors)
    return tuple(Simplex((u, v)) for u, v in zip(chain, chain[1:]))


def is_rectangle(
    first: Bridge,
    second: Bridge,
    *,
    angle_tol: float = ANGLE_TOLERANCE,
    side_tol: float = RECTANGLE_SIDE_TOLERANCE,
) -> bool:
    """Whether start1 -> end1 -> end2 -> start2 closes a rectangle."""
    corners = np.array(
        [first.start.as_tuple(), first.end.as_tuple(), second.end.as_tuple(), second.start.as_tuple()]
    )
    sides = np.roll(corners, -1, axis=0) - corners
    lengths = np.hypot(sides[:, 0], sides[:, 1])
    if np.any(lengths <= side_tol):
        return False

    for i in range(4):
        u, v = sides[i - 1], sides[i]
        cosine = float(np.dot(-u, v) / (np.linalg.norm(u) * np.linalg.norm(v)))
        if abs(math.acos(max(-1.0, min(1.0, cosine))) - math.pi / 2) > angle_tol:
            return False

    return bool(abs(lengths[0] - lengths[2]) <= side_tol and abs(lengths[1] - lengths[3]) <= side_tol)


def sew(a: Region, b: Region, k: int, scene: Scene) -> SewResult:
    """Join two disjoint regions with ``k`` non-crossing bridge edges between boundary cells."""
    scene.require(a, b)
    require_positive("k", k)
    if cech_distance(a, b) <= scene.epsilon:
        raise PreconditionError("sew", f"regions '{a.id}' and '{b.id}' are not disjoint")

    chosen: list[tuple[SubregionCell, SubregionCell, LineString]] = []
    used_a: set[tuple[int, int]] = set()
    used_b: set[tuple[int, int]] = set()
    for gap, cell_a, cell_b in _anchor_pairs(a, b, scene.cell_size):
        if len(chosen) == k:
            break
        if cell_a.index in used_a or cell_b.index in used_b:
            continue
        segment = _bridge_segment(cell_a, cell_b)
        if segment.length <= scene.epsilon or any(segment.intersects(s) for _, _, s in chosen):
            continue
        if _passes_through(segment, a, scene.epsilon) or _passes_through(segment, b, scene.epsilon):
            continue
        logger.debug("Bridge %s[%s] -> %s[%s] gap=%g", a.id, cell_a.index, b.id, cell_b.index, gap)
        chosen.append((cell_a, cell_b, segment))
        used_a.add(cell_a.index)
        used_b.add(cell_b.index)

    if len(chosen) < k:
        raise CapacityError(k, len(chosen))

    radius = scene.epsilon * VERTEX_RADIUS_FACTOR
    anchors_a: dict[str, Point2] = {}
    anchors_b: dict[str, Point2] = {}
    bridges = []
    for n, (cell_a, cell_b, segment) in enumerate(chosen):
        (sx, sy), (ex, ey) = segment.coords
        start, end = Point2(sx, sy), Point2(ex, ey)
        va, vb = f"{a.id}.{n}", f"{b.id}.{n}"
        anchors_a[va], anchors_b[vb] = start, end

        region = capsule_region(f"bridge({a.id},{b.id}).{n}", (start, end), radius)
        for end_region in (a, b):
            if not strongly_near_sets((region,), (end_region,), scene):
                raise ConsistencyError(
                    "sew-anchor", f"Bridge {n} is not strongly near region '{end_region.id}'"
                )
        bridges.append(Bridge(Simplex((va, vb)), cell_a, cell_b, start, end, region))

    # A ∪ bridges ∪ B: each region enters the complex as the chain through its anchors
    edges = [bridge.edge for bridge in bridges]
    edges += side_edges(a, anchors_a) + side_edges(b, anchors_b)
    complex_ = SimplicialComplex.closed({**anchors_a, **anchors_b}, edges)
    rectangle = len(bridges) >= 2 and is_rectangle(bridges[0], bridges[1])
    sewn = scene.with_regions(*(bridge.region for bridge in bridges))
    return SewResult(complex_, tuple(bridges), k, sewn, rectangle)

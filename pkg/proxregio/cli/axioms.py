from __future__ import annotations

import json
import logging
import math
from collections.abc import Callable
from dataclasses import asdict, dataclass

import numpy as np
from shapely.geometry import LineString, Point

from proxregio.cli.generator import Trial, color_features, generate_trial
from proxregio.core.errors import InvalidRegionError, ProxregioError
from proxregio.description.descriptive import (
    cell_matches_region,
    cells_dnear,
    describe,
    describe_cell,
    describe_polytope,
    descriptive_intersection,
    descriptively_congruent,
    dnear,
    dnear_sets,
    dsnear,
    dsnear_sets,
    shape_dnear,
)
from proxregio.description.registry import ProbeRegistry
from proxregio.geometry.grid import cell_adjacency, cell_point_region, region_cells
from proxregio.geometry.measures import Part, contact, in_closure, measure, part_membership
from proxregio.geometry.primitives import Point2, Region
from proxregio.geometry.scene import Scene
from proxregio.geometry.shapes import (
    capsule_region,
    circle_region,
    closure_region,
    dilate,
    point_region,
    rotate_region,
    scale_region,
    translate_region,
)
from proxregio.parallelism.lines import PhysicalLine, is_straight, supporting_segment
from proxregio.parallelism.predicates import (
    descriptively_parallel,
    locally_parallel,
    parallel_regions,
    proximal_parallel,
)
from proxregio.proximity.relations import (
    near,
    near_sets,
    strongly_far,
    strongly_near,
    strongly_near_sets,
)
from proxregio.simplicial.complex import Simplex, SimplicialComplex

logger = logging.getLogger(__name__)

AXIOM_IDS = (
    "P0", "P1", "P2", "P3", "P4", "P5",
    "snN0", "snN1", "snN2", "snN4", "snN5", "snN6",
    "dP0", "dP1", "dP2", "dP3", "dP4", "dP5",
    "dsnP0", "dsnP1", "dsnP2", "dsnP4", "dsnP5", "dsnP6",
    "PG.1", "PG.2", "PG.3", "PG.4", "PG.5", "PG.6",
    "PG.7", "PG.8", "PG.9", "PG.10", "PG.11", "PG.12",
    "d.1", "d.2", "d.3", "d.4", "d.5", "d.6", "d.7", "d.8",
    "Prop2.1", "Prop2.2", "Prop2.4", "EF",
)

NOT_APPLICABLE = {
    "P5": "adjacent grid cells share boundary points, so near does not separate cells",
}

GEOMETRY_REGISTRY = ProbeRegistry.from_kinds(
    ("area", "perimeter", "diameter", "convexity", "hole_count", "curvature_proxy")
)

Check = Callable[[Trial, np.random.Generator], "bool | None"]
CHECKS: dict[str, Check] = {}


def axiom(axiom_id: str) -> Callable[[Check], Check]:
    def register(check: Check) -> Check:
        CHECKS[axiom_id] = check
        return check

    return register


@dataclass(frozen=True)
class AxiomEntry:
    axiom: str
    trials: int
    failures: int
    counterexample: str | None = None
    applicable: bool = True
    note: str = ""

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class AxiomReport:
    entries: tuple[AxiomEntry, ...]
    trials: int
    seed: int

    @property
    def missing(self) -> tuple[str, ...]:
        present = {e.axiom for e in self.entries}
        return tuple(a for a in AXIOM_IDS if a not in present)

    @property
    def failures(self) -> int:
        return sum(e.failures for e in self.entries)

    @property
    def passed(self) -> bool:
        return not self.missing and self.failures == 0

    def entry(self, axiom_id: str) -> AxiomEntry:
        for e in self.entries:
            if e.axiom == axiom_id:
                return e
        raise KeyError(axiom_id)

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "seed": self.seed,
            "passed": self.passed,
            "missing": list(self.missing),
            "entries": [e.to_dict() for e in self.entries],
        }


def _counterexample(trial: Trial, error: str | None = None) -> str:
    payload = {
        "trial": trial.index,
        "arrangement": trial.arrangement.value,
        "regions": [
            {"id": r.id, "outer": [list(p.as_tuple()) for p in r.outer]}
            for r in (trial.a, trial.b, trial.c)
        ],
    }
    if error:
        payload["error"] = error
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def run_axioms(trials: int, seed: int) -> AxiomReport:
    rng = np.random.default_rng(seed)
    tallies = {axiom_id: [0, 0, None] for axiom_id in CHECKS}

    for index in range(trials):
        trial = generate_trial(rng, index)
        check_rng = np.random.default_rng([seed, index])
        for axiom_id, check in CHECKS.items():
            tally = tallies[axiom_id]
            error = None
            try:
                outcome = check(trial, check_rng)
            except ProxregioError as err:
                outcome, error = False, err.message
            if outcome is None:
                continue
            tally[0] += 1
            if not outcome:
                tally[1] += 1
                if tally[2] is None:
                    tally[2] = _counterexample(trial, error)
                    logger.warning("Axiom %s failed on trial %d", axiom_id, index)
        logger.debug("Axiom trial %d/%d (%s) done", index + 1, trials, trial.arrangement.value)

    entries = []
    for axiom_id in AXIOM_IDS:
        if axiom_id in NOT_APPLICABLE:
            entries.append(AxiomEntry(axiom_id, 0, 0, applicable=False, note=NOT_APPLICABLE[axiom_id]))
        elif axiom_id in tallies:
            count, failures, example = tallies[axiom_id]
            entries.append(AxiomEntry(axiom_id, count, failures, example))
    return AxiomReport(tuple(entries), trials, seed)


def _cells(region: Region, scene: Scene):
    return region_cells(region, scene.cell_size)


def _pick(rng: np.random.Generator, items):
    return items[int(rng.integers(len(items)))]


def _unit(rng: np.random.Generator) -> tuple[float, float]:
    t = rng.uniform(0.0, 2.0 * math.pi)
    return (math.cos(t), math.sin(t))


# Lodato proximity


@axiom("P0")
def _p0(trial: Trial, rng) -> bool:
    s = trial.scene
    return not near_sets((), (trial.a,), s) and not near_sets((trial.a,), (), s)


@axiom("P1")
def _p1(trial: Trial, rng) -> bool:
    s, a, b, c = trial.scene, trial.a, trial.b, trial.c
    return near(a, b, s).holds == near(b, a, s).holds and near(a, c, s).holds == near(c, a, s).holds


@axiom("P2")
def _p2(trial: Trial, rng) -> bool | None:
    if not trial.a.geometry.intersects(trial.b.geometry):
        return None
    return near(trial.a, trial.b, trial.scene).holds


@axiom("P3")
def _p3(trial: Trial, rng) -> bool:
    s, a, b, c = trial.scene, trial.a, trial.b, trial.c
    union = near_sets((a,), (b, c), s).holds
    return union == (near(a, b, s).holds or near(a, c, s).holds)


@axiom("P4")
def _p4(trial: Trial, rng) -> bool | None:
    s, a, b = trial.scene, trial.a, trial.b
    if not near(a, b, s):
        return None
    # every point of B is near C' when C' covers B
    c_prime = dilate(b, rng.uniform(0.01, 0.1), box=s.box, region_id="C'")
    if not c_prime.geometry.buffer(s.epsilon).covers(b.geometry):
        return None
    return near_sets((a,), (c_prime,), s).holds


# strong proximity


@axiom("snN0")
def _snn0(trial: Trial, rng) -> bool:
    s = trial.scene
    return not strongly_near_sets((), (trial.a,), s) and strongly_near(s.universe, trial.a, s).holds


@axiom("snN1")
def _snn1(trial: Trial, rng) -> bool:
    s = trial.scene
    pairs = ((trial.a, trial.b), (trial.a, trial.c), (trial.b, trial.c))
    return all(strongly_near(x, y, s).holds == strongly_near(y, x, s).holds for x, y in pairs)


@axiom("snN2")
def _snn2(trial: Trial, rng) -> bool | None:
    if not strongly_near(trial.a, trial.b, trial.scene):
        return None
    return trial.a.geometry.intersects(trial.b.geometry)


@axiom("snN4")
def _snn4(trial: Trial, rng) -> bool | None:
    eps = trial.scene.epsilon
    if trial.a.polygon.intersection(trial.b.polygon).area <= eps * eps:
        return None
    return strongly_near(trial.a, trial.b, trial.scene).holds


@axiom("snN5")
def _snn5(trial: Trial, rng) -> bool | None:
    s, a = trial.scene, trial.a
    inner = [c for c in _cells(a, s) if c.interior_cell]
    if not inner:
        return None
    rep = _pick(rng, inner).polygon.representative_point()
    x = point_region("x", Point2(rep.x, rep.y), s.epsilon)
    return strongly_near_sets((x,), (a,), s).holds


@axiom("snN6")
def _snn6(trial: Trial, rng) -> bool | None:
    s = trial.scene
    cells = _cells(trial.a, s)
    if len(cells) < 2:
        return None
    first, second = (cells[int(n)] for n in rng.choice(len(cells), size=2, replace=False))
    x, y = cell_point_region(first, s.epsilon), cell_point_region(second, s.epsilon)
    return strongly_near_sets((x,), (x,), s).holds and not strongly_near_sets((x,), (y,), s).holds


# descriptive proximity


def _match(values_x: np.ndarray, values_y: np.ndarray, tolerance: float) -> bool:
    return bool(np.all(np.abs(values_x - values_y) <= tolerance))


def _exhaustive_dnear(trial: Trial, x: Region, y: Region, interior_only: bool = False) -> bool:
    """O(n²) cell scan: a description shared by both sides, or a shared member."""
    s, reg = trial.scene, trial.scene.registry
    cells_x = [c for c in _cells(x, s) if c.interior_cell or not interior_only]
    cells_y = [c for c in _cells(y, s) if c.interior_cell or not interior_only]
    for cx in cells_x:
        vx = describe_cell(cx, x, reg).as_array()
        for cy in cells_y:
            if _match(vx, describe_cell(cy, y, reg).as_array(), reg.tolerance):
                return True

    if not interior_only:
        return contact(x.geometry, y.geometry, s.epsilon) is not None
    common = contact(x.polygon, y.polygon, s.epsilon)
    if common is None or common.kind != "area":
        return False
    floor = s.epsilon * s.epsilon
    return any(c.polygon.intersection(common.shape).area > floor for c in cells_x + cells_y)


@axiom("dP0")
def _dp0(trial: Trial, rng) -> bool:
    s = trial.scene
    return not dnear_sets((), (trial.a,), s) and not dnear_sets((trial.a,), (), s)


@axiom("dP1")
def _dp1(trial: Trial, rng) -> bool:
    s = trial.scene
    pairs = ((trial.a, trial.b), (trial.a, trial.c), (trial.b, trial.c))
    return all(dnear(x, y, s).holds == dnear(y, x, s).holds for x, y in pairs)


@axiom("dP2")
def _dp2(trial: Trial, rng) -> bool:
    s = trial.scene
    return bool(descriptive_intersection(trial.a, trial.b, s)) == dnear(trial.a, trial.b, s).holds


@axiom("dP3")
def _dp3(trial: Trial, rng) -> bool:
    s, a, b, c = trial.scene, trial.a, trial.b, trial.c
    union = dnear_sets((a,), (b, c), s).holds
    return union == (dnear(a, b, s).holds or dnear(a, c, s).holds)


@axiom("dP4")
def _dp4(trial: Trial, rng) -> bool | None:
    s, a, b = trial.scene, trial.a, trial.b
    # cells are described by their owner, so only description matches carry over to a copy
    if not dnear(a, b, s) or strongly_near(a, b, s):
        return None
    c_prime = translate_region(b, rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5), region_id="C'")
    if not all(cell_matches_region(x, b, c_prime, s) for x in _cells(b, s)):
        return None
    return dnear_sets((a,), (c_prime,), s).holds


def _cell_pair(trial: Trial, rng):
    s = trial.scene
    return _pick(rng, _cells(trial.a, s)), _pick(rng, _cells(trial.b, s))


@axiom("dP5")
def _dp5(trial: Trial, rng) -> bool:
    reg = trial.scene.registry
    x, y = _cell_pair(trial, rng)
    keys = ("color_r", "color_g", "color_b")
    equal = all(abs(x.features.get(k, 0.0) - y.features.get(k, 0.0)) <= reg.tolerance for k in keys)
    return cells_dnear(x, trial.a, y, trial.b, reg) == equal


@axiom("dsnP0")
def _dsnp0(trial: Trial, rng) -> bool:
    s = trial.scene
    return not dsnear_sets((), (trial.a,), s) and dsnear(s.universe, trial.a, s).holds


@axiom("dsnP1")
def _dsnp1(trial: Trial, rng) -> bool:
    s = trial.scene
    pairs = ((trial.a, trial.b), (trial.a, trial.c), (trial.b, trial.c))
    return all(dsnear(x, y, s).holds == dsnear(y, x, s).holds for x, y in pairs)


@axiom("dsnP2")
def _dsnp2(trial: Trial, rng) -> bool | None:
    if not dsnear(trial.a, trial.b, trial.scene):
        return None
    return bool(descriptive_intersection(trial.a, trial.b, trial.scene))


@axiom("dsnP4")
def _dsnp4(trial: Trial, rng) -> bool | None:
    if not _exhaustive_dnear(trial, trial.a, trial.b, interior_only=True):
        return None
    return dsnear(trial.a, trial.b, trial.scene).holds


@axiom("dsnP5")
def _dsnp5(trial: Trial, rng) -> bool | None:
    s, reg = trial.scene, trial.scene.registry
    x = _pick(rng, _cells(trial.b, s))
    vx = describe_cell(x, trial.b, reg).as_array()
    inner = [c for c in _cells(trial.a, s) if c.interior_cell]
    if not any(_match(vx, describe_cell(c, trial.a, reg).as_array(), reg.tolerance) for c in inner):
        return None
    return cell_matches_region(x, trial.b, trial.a, s, interior_only=True)


@axiom("dsnP6")
def _dsnp6(trial: Trial, rng) -> bool:
    reg = trial.scene.registry
    x, y = _cell_pair(trial, rng)
    same = _match(
        describe_cell(x, trial.a, reg).as_array(), describe_cell(y, trial.b, reg).as_array(), reg.tolerance
    )
    return cells_dnear(x, trial.a, y, trial.b, reg) == same


# physical geometry


@axiom("PG.1")
def _pg1(trial: Trial, rng) -> bool:
    ux, uy = _unit(rng)
    steps = np.cumsum(rng.uniform(0.2, 1.0, size=int(rng.integers(3, 7))))
    straight = [(6.0 + t * ux, 6.0 + t * uy) for t in steps]
    bent = list(straight)
    mid = len(bent) // 2
    bent[mid] = (bent[mid][0] - 0.1 * uy, bent[mid][1] + 0.1 * ux)
    return is_straight(straight) and not is_straight(bent)


@axiom("PG.2")
def _pg2(trial: Trial, rng) -> bool:
    if any(measure(r).area <= 0.0 for r in (trial.a, trial.b, trial.c)):
        return False
    p = _pick(rng, trial.a.outer)
    try:
        Region("flat", (p, Point2(p.x + 1.0, p.y), Point2(p.x + 2.0, p.y)))
    except InvalidRegionError as err:
        return err.axiom == "PG.2"
    return False


@axiom("PG.3")
def _pg3(trial: Trial, rng) -> bool:
    s = trial.scene
    inside = all(s.box.polygon.buffer(s.epsilon).covers(r.geometry) for r in s.regions)
    outside = translate_region(trial.c, s.box.max_x, 0.0)
    try:
        Scene((outside,), s.box, s.epsilon, s.cell_size)
    except InvalidRegionError as err:
        return inside and err.axiom == "PG.3"
    return False


@axiom("PG.4")
def _pg4(trial: Trial, rng) -> bool:
    closed = closure_region(trial.a).polygon.buffer(trial.scene.epsilon)
    return all(closed.covers(c.polygon) for c in _cells(trial.a, trial.scene) if c.interior_cell)


@axiom("PG.5")
def _pg5(trial: Trial, rng) -> bool:
    s = trial.scene
    hole = Region("hole", trial.a.outer, is_hole_region=True)
    empty = measure(hole).interior_area == 0.0 and not any(c.interior_cell for c in _cells(hole, s))
    solid = measure(trial.a).interior_area > 0.0 and bool(_cells(trial.a, s))
    return empty and solid


@axiom("PG.6")
def _pg6(trial: Trial, rng) -> bool:
    a, eps = trial.a, trial.scene.epsilon
    same = closure_region(a).polygon.symmetric_difference(a.polygon).area <= eps * eps

    # S = A with its first edge left open: that edge is in cl S but not in S
    (x0, y0), (x1, y1) = a.outer[0].as_tuple(), a.outer[1].as_tuple()
    edge = LineString([(x0, y0), (x1, y1)])
    t = rng.uniform(0.2, 0.8)
    p = Point2(x0 + t * (x1 - x0), y0 + t * (y1 - y0))
    nx, ny = -(y1 - y0) / edge.length, (x1 - x0) / edge.length
    centroid = a.polygon.centroid
    if nx * (centroid.x - p.x) + ny * (centroid.y - p.y) < 0:
        nx, ny = -nx, -ny
    q = Point2(p.x + 2.0 * eps * nx, p.y + 2.0 * eps * ny)

    def in_open(x: Point2) -> bool:
        return in_closure(a, x, eps) and edge.distance(Point(x.x, x.y)) > eps

    on_edge = part_membership(a, p, eps) == Part.BOUNDARY and in_closure(a, p, eps)
    reopened = not in_open(p) and in_open(q) and p.distance_to(q) <= 3.0 * eps
    return same and on_edge and reopened


@axiom("PG.7")
def _pg7(trial: Trial, rng) -> bool:
    center = Point2(*rng.uniform(3.0, 9.0, size=2))
    radius = rng.uniform(0.3, 1.0)
    circle = circle_region("circle", center, radius, sides=int(rng.integers(8, 65)))
    return all(abs(p.distance_to(center) - radius) <= 1e-9 * radius for p in circle.outer)


def _rigid_copy(region: Region, rng, region_id: str) -> Region:
    turned = rotate_region(region, rng.uniform(0.0, 2.0 * math.pi))
    return translate_region(turned, rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), region_id=region_id)


@axiom("PG.8")
def _pg8(trial: Trial, rng) -> bool:
    copy = _rigid_copy(trial.a, rng, "A'")
    return abs(measure(copy).area - measure(trial.a).area) <= 1e-9 * measure(trial.a).area


@axiom("PG.9")
def _pg9(trial: Trial, rng) -> bool | None:
    a, b, eps = trial.a, trial.b, trial.scene.epsilon
    if a.polygon.intersection(b.polygon).area <= eps * eps:
        return None
    if a.polygon.covers(b.polygon) or b.polygon.covers(a.polygon):
        return None
    cut = a.boundary.intersection(b.polygon)
    return cut.length > eps and cut.area == 0.0


def _line_pair(rng, offset: float, turn: float = 0.0) -> tuple[PhysicalLine, PhysicalLine]:
    ux, uy = _unit(rng)
    cx, cy = rng.uniform(5.0, 7.0, size=2)
    a = PhysicalLine("L", (cx - ux, cy - uy), (cx + ux, cy + uy), 0.1)
    vx, vy = ux * math.cos(turn) - uy * math.sin(turn), ux * math.sin(turn) + uy * math.cos(turn)
    ox, oy = cx - offset * uy, cy + offset * ux
    b = PhysicalLine("L'", (ox - vx, oy - vy), (ox + vx, oy + vy), 0.1)
    return a, b


@axiom("PG.10")
def _pg10(trial: Trial, rng) -> bool:
    a, b = _line_pair(rng, 0.0, rng.uniform(0.3, math.pi - 0.3))
    common = contact(a.region.geometry, b.region.geometry, trial.scene.epsilon)
    return common is not None and common.kind == "area"


@axiom("PG.11")
def _pg11(trial: Trial, rng) -> bool:
    a, b = _line_pair(rng, rng.uniform(0.3, 2.0))
    return locally_parallel(a, b).holds and not a.region.geometry.intersects(b.region.geometry)


@axiom("PG.12")
def _pg12(trial: Trial, rng) -> bool:
    s = trial.scene
    a, b = _line_pair(rng, rng.uniform(0.3, 2.0))
    parallel = proximal_parallel(a, b, s)
    if not parallel:
        return False
    skew_a, skew_b = _line_pair(rng, rng.uniform(0.3, 2.0), rng.uniform(0.05, 0.5))
    skew = proximal_parallel(skew_a, skew_b, s)
    meets = supporting_segment(skew_a, s.box).intersects(supporting_segment(skew_b, s.box))
    return not (skew.holds and meets)


# descriptive physical geometry


@axiom("d.1")
def _d1(trial: Trial, rng) -> bool:
    s = trial.scene
    ux, uy = _unit(rng)
    color = _pick(rng, ("red", "green", "blue"))
    line = capsule_region(
        "line", ((6.0 - 1.5 * ux, 6.0 - 1.5 * uy), (6.0 + 1.5 * ux, 6.0 + 1.5 * uy)), 0.3,
        features=color_features(color),
    )
    cells = {c.index: c for c in _cells(line, s)}
    return all(
        cells_dnear(cells[i], line, cells[j], line, s.registry)
        for i, neighbours in cell_adjacency(tuple(cells.values())).items()
        for j in neighbours
    )


@axiom("d.2")
def _d2(trial: Trial, rng) -> bool:
    reg = GEOMETRY_REGISTRY
    vector = describe(trial.a, reg)
    if len(vector) != len(reg) or not all(math.isfinite(v) for v in vector.values):
        return False
    congruent = describe(_rigid_copy(trial.a, rng, "A'"), reg).matches(vector, reg.tolerance)
    grown = scale_region(trial.a, rng.uniform(1.2, 2.0), region_id="A+")
    distinct = not describe(grown, reg).matches(vector, reg.tolerance)
    differs = abs(measure(trial.a).area - measure(trial.b).area) > reg.tolerance
    return congruent and distinct and not (differs and describe(trial.b, reg).matches(vector, reg.tolerance))


def _painted_vertices(points: dict[str, Point2], colors: dict[str, str], eps: float) -> list[Region]:
    return [point_region(v, points[v], eps, features=color_features(colors[v])) for v in sorted(points)]


@axiom("d.3")
def _d3(trial: Trial, rng) -> bool:
    s, reg = trial.scene, trial.scene.registry
    points = {f"v{n}": Point2(*rng.uniform(2.0, 10.0, size=2)) for n in range(3)}
    names = sorted(points)
    palette = ("red", "green", "blue")
    colors = dict(zip(names, (palette[int(i)] for i in rng.permutation(3))))
    triangle = SimplicialComplex.closed(points, (Simplex(tuple(points)),))

    whole = describe_polytope(_painted_vertices(points, colors, s.epsilon), reg)
    if len(whole) != len(triangle.vertices):
        return False
    for face in triangle.edges:
        face_regions = [r for r in _painted_vertices(points, colors, s.epsilon) if r.id in face.vertices]
        if describe_polytope(face_regions, reg) != tuple(whole[names.index(v)] for v in face.vertices):
            return False

    # a change of one vertex changes its own entry and the faces through it, nothing else
    moved = _pick(rng, names)
    recolored = {**colors, moved: _pick(rng, [c for c in palette if c != colors[moved]])}
    after = describe_polytope(_painted_vertices(points, recolored, s.epsilon), reg)
    changed = {names[i] for i in range(len(names)) if not after[i].matches(whole[i], reg.tolerance)}
    faces_changed = {
        face
        for face in triangle.edges
        if any(not after[names.index(v)].matches(whole[names.index(v)], reg.tolerance) for v in face.vertices)
    }
    return changed == {moved} and faces_changed == {f for f in triangle.edges if moved in f.vertices}


@axiom("d.4")
def _d4(trial: Trial, rng) -> bool:
    reg = GEOMETRY_REGISTRY
    return describe(closure_region(trial.a), reg).matches(describe(trial.a, reg), reg.tolerance)


@axiom("d.5")
def _d5(trial: Trial, rng) -> bool:
    reg = GEOMETRY_REGISTRY
    copy = _rigid_copy(trial.a, rng, "A'")
    oracle = _match(describe(trial.a, reg).as_array(), describe(trial.b, reg).as_array(), reg.tolerance)
    return descriptively_congruent(trial.a, copy, reg) and (
        descriptively_congruent(trial.a, trial.b, reg) == oracle
    )


@axiom("d.6")
def _d6(trial: Trial, rng) -> bool:
    copy = _rigid_copy(trial.a, rng, "A'")
    tol = GEOMETRY_REGISTRY.tolerance
    oracle = abs(trial.a.polygon.length - trial.b.polygon.length) <= tol
    return shape_dnear(trial.a, copy, by="perimeter").holds and (
        shape_dnear(trial.a, trial.b, by="perimeter").holds == oracle
    )


@axiom("d.7")
def _d7(trial: Trial, rng) -> bool:
    copy = _rigid_copy(trial.a, rng, "A'")
    tol = GEOMETRY_REGISTRY.tolerance
    oracle = abs(trial.a.polygon.area - trial.b.polygon.area) <= tol
    return shape_dnear(trial.a, copy, by="area").holds and (
        shape_dnear(trial.a, trial.b, by="area").holds == oracle
    )


@axiom("d.8")
def _d8(trial: Trial, rng) -> bool:
    s, a, b = trial.scene, trial.a, trial.b
    direction = _unit(rng)
    combined = parallel_regions(a, b, s, direction).holds and dnear(a, b, s).holds
    return descriptively_parallel(a, b, s, None, direction).holds == combined


# implication chains


@axiom("Prop2.1")
def _prop21(trial: Trial, rng) -> bool:
    s = trial.scene
    return all(
        dnear(x, y, s).holds == _exhaustive_dnear(trial, x, y)
        for x, y in ((trial.a, trial.b), (trial.a, trial.c))
    )


@axiom("Prop2.2")
def _prop22(trial: Trial, rng) -> bool | None:
    s, a, b = trial.scene, trial.a, trial.b
    if not strongly_near(a, b, s):
        return None
    return near(a, b, s).holds and dnear(a, b, s).holds


@axiom("Prop2.4")
def _prop24(trial: Trial, rng) -> bool | None:
    s, a, b = trial.scene, trial.a, trial.b
    if not dsnear(a, b, s):
        return None
    return dnear(a, b, s).holds


@axiom("EF")
def _ef(trial: Trial, rng) -> bool | None:
    s, a, b = trial.scene, trial.a, trial.b
    verdict = strongly_far(a, b, s)
    if not verdict:
        return None
    witness = verdict.witness
    outside = s.box.polygon.difference(witness.geometry)
    separated = outside.is_empty or a.geometry.distance(outside) > s.epsilon
    return not near(a, b, s).holds and separated and witness.geometry.distance(b.geometry) > s.epsilon

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from itertools import combinations

from shapely.geometry import LineString, MultiPoint, Point, Polygon
from shapely.geometry.base import BaseGeometry

from proxregio.core.errors import DimensionError
from proxregio.core.settings import DETERMINANT_TOLERANCE
from proxregio.geometry.primitives import Point2, Region
from proxregio.geometry.shapes import point_region


def is_simplex(points: Sequence[Point2 | Sequence[float]], *, tol: float = DETERMINANT_TOLERANCE) -> bool:
    """Affine independence of 1 to 3 planar points."""
    pts = [Point2.of(p) for p in points]
    if not 1 <= len(pts) <= 3:
        raise DimensionError(len(pts))
    if len(pts) == 1:
        return True
    p0, p1 = pts[0], pts[1]
    if len(pts) == 2:
        return p0 != p1
    p2 = pts[2]
    det = (p1.x - p0.x) * (p2.y - p0.y) - (p1.y - p0.y) * (p2.x - p0.x)
    return abs(det) > tol


@dataclass(frozen=True, order=True)
class Simplex:
    vertices: tuple[str, ...]

    def __post_init__(self) -> None:
        vertices = tuple(sorted(set(self.vertices)))
        if len(vertices) != len(self.vertices) or not 1 <= len(vertices) <= 3:
            raise DimensionError(
                len(self.vertices), f"A planar simplex needs 1 to 3 distinct vertices, got {self.vertices}"
            )
        object.__setattr__(self, "vertices", vertices)

    @property
    def k(self) -> int:
        return len(self.vertices) - 1

    def faces(self) -> tuple[Simplex, ...]:
        """Proper nonempty faces."""
        return tuple(
            Simplex(sub)
            for size in range(1, len(self.vertices))
            for sub in combinations(self.vertices, size)
        )

    def __str__(self) -> str:
        return "<" + ",".join(self.vertices) + ">"


@dataclass(frozen=True)
class SimplicialComplex:
    vertices: Mapping[str, Point2] = field(hash=False)
    simplices: frozenset[Simplex] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "vertices", {str(k): Point2.of(v) for k, v in dict(self.vertices).items()}
        )
        object.__setattr__(self, "simplices", frozenset(self.simplices))

    @classmethod
    def closed(cls, vertices: Mapping[str, Point2], simplices: Iterable[Simplex]) -> SimplicialComplex:
        """Complex holding every given simplex together with all of its faces."""
        closure: set[Simplex] = set()
        for simplex in simplices:
            closure.add(simplex)
            closure.update(simplex.faces())
        return cls(vertices, frozenset(closure))

    @property
    def edges(self) -> tuple[Simplex, ...]:
        return tuple(sorted(s for s in self.simplices if s.k == 1))

    @property
    def triangles(self) -> tuple[Simplex, ...]:
        return tuple(sorted(s for s in self.simplices if s.k == 2))

    def geometry(self, simplex: Simplex) -> BaseGeometry:
        coords = [self.vertices[v].as_tuple() for v in simplex.vertices]
        if len(coords) == 1:
            return Point(coords[0])
        if len(coords) == 2:
            return LineString(coords)
        if not is_simplex(coords):
            return MultiPoint(coords).convex_hull
        return Polygon(coords)

    def vertex_regions(self, epsilon: float) -> tuple[Region, ...]:
        """Physical vertices: small disks in vertex-id order."""
        return tuple(point_region(v, self.vertices[v], epsilon) for v in sorted(self.vertices))

    def to_dict(self) -> dict:
        return {
            "vertices": {k: list(v.as_tuple()) for k, v in sorted(self.vertices.items())},
            "simplices": [list(s.vertices) for s in sorted(self.simplices)],
        }


@dataclass(frozen=True)
class ComplexValidation:
    valid: bool
    violations: tuple[str, ...]

    def __bool__(self) -> bool:
        return self.valid

    def to_dict(self) -> dict:
        return {"valid": self.valid, "violations": list(self.violations)}


def validate_complex(c: SimplicialComplex, *, tol: float = 1e-9) -> ComplexValidation:
    violations: list[str] = []
    simplices = sorted(c.simplices)

    usable = []
    for s in simplices:
        missing = [v for v in s.vertices if v not in c.vertices]
        if missing:
            violations.append(f"{s}: unknown vertices {', '.join(missing)}")
            continue
        if not is_simplex([c.vertices[v] for v in s.vertices]):
            violations.append(f"{s}: vertices are not affinely independent")
            continue
        usable.append(s)
        for face in s.faces():
            if face not in c.simplices:
                violations.append(f"{s}: face {face} missing (face closure)")

    shapes = {s: c.geometry(s) for s in usable}
    for s, t in combinations(usable, 2):
        common = set(s.vertices) & set(t.vertices)
        gs, gt = shapes[s], shapes[t]
        if not common:
            if gs.distance(gt) <= tol:
                violations.append(f"{s} and {t} meet outside a common face")
            continue
        face = c.geometry(Simplex(tuple(common)))
        shared = gs.intersection(gt)
        if shared.is_empty or shared.hausdorff_distance(face) > tol:
            violations.append(f"{s} and {t} intersect in more than their common face")

    return ComplexValidation(not violations, tuple(violations))

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import asdict, dataclass
from functools import cached_property

import shapely
from shapely.geometry import LinearRing, LineString

from proxregio.core.errors import InvalidRegionError, InvalidSpineError, PreconditionError
from proxregio.core.guards import require_positive
from proxregio.geometry.grid import region_cells
from proxregio.geometry.measures import contact
from proxregio.geometry.primitives import Point2, Region, SubregionCell
from proxregio.geometry.scene import Scene
from proxregio.geometry.shapes import capsule_region, rectangle_region


@dataclass(frozen=True)
class PhysicalString:
    """A particle path of non-zero width; a closed spine gives an annular string."""

    id: str
    spine: tuple[Point2, ...]
    width: float
    closed: bool = False

    def __post_init__(self) -> None:
        require_positive("width", self.width)
        spine = tuple(Point2.of(p) for p in self.spine)
        closed = self.closed or (len(spine) > 3 and spine[0] == spine[-1])
        if closed and spine[0] == spine[-1]:
            spine = spine[:-1]

        if len(spine) < (3 if closed else 2):
            raise InvalidSpineError(f"string '{self.id}' has too few spine points")
        for p, q in zip(spine, spine[1:] + (spine[:1] if closed else ())):
            if p == q:
                raise InvalidSpineError(f"string '{self.id}' repeats spine point ({p.x}, {p.y})")

        coords = [p.as_tuple() for p in spine]
        line = LinearRing(coords) if closed else LineString(coords)
        if not line.is_simple:
            raise InvalidSpineError(f"string '{self.id}' crosses itself")

        object.__setattr__(self, "spine", spine)
        object.__setattr__(self, "width", float(self.width))
        object.__setattr__(self, "closed", closed)

    @property
    def length(self) -> float:
        coords = [p.as_tuple() for p in self.spine]
        line = LinearRing(coords) if self.closed else LineString(coords)
        return float(line.length)

    @cached_property
    def region(self) -> Region:
        return capsule_region(self.id, self.spine, self.width / 2.0, closed=self.closed)


def make_string(
    spine: Sequence[Point2 | Sequence[float]],
    width: float,
    scene: Scene,
    *,
    string_id: str = "string",
    closed: bool = False,
) -> PhysicalString:
    string = PhysicalString(string_id, tuple(Point2.of(p) for p in spine), width, closed)
    if not scene.box.polygon.buffer(scene.epsilon).covers(string.region.geometry):
        raise InvalidRegionError(string_id, "string leaves the scene box", "PG.3")
    return string


@dataclass(frozen=True)
class WorldsheetCheck:
    holds: bool
    uncovered: tuple[SubregionCell, ...]
    pitch: float

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "pitch": self.pitch,
            "uncovered": [list(c.index) for c in self.uncovered],
        }


@dataclass(frozen=True)
class Worldsheet:
    region: Region
    cover: tuple[PhysicalString, ...]


def is_worldsheet(region: Region, strings: Iterable[PhysicalString], scene: Scene) -> WorldsheetCheck:
    """Every grid cell of the region must share a positive-measure part with some string."""
    strings = tuple(strings)
    cells = region_cells(region, scene.cell_size)
    if not strings:
        return WorldsheetCheck(False, cells, scene.cell_size)

    cover = shapely.unary_union([s.region.geometry for s in strings])
    uncovered = tuple(c for c in cells if contact(c.polygon, cover, scene.epsilon) is None)
    return WorldsheetCheck(not uncovered, uncovered, scene.cell_size)


def make_worldsheet(region: Region, strings: Iterable[PhysicalString], scene: Scene) -> Worldsheet:
    strings = tuple(strings)
    check = is_worldsheet(region, strings, scene)
    if not check:
        missing = ", ".join(str(c.index) for c in check.uncovered[:5])
        raise PreconditionError("make_worldsheet", f"cells without a string: {missing}")
    return Worldsheet(region, strings)


def striped_worldsheet(
    sheet_id: str,
    min_x: float,
    min_y: float,
    max_x: float,
    max_y: float,
    stripes: int,
    *,
    skip: Iterable[int] = (),
) -> tuple[Region, tuple[PhysicalString, ...]]:
    """Rectangle sheet with abutting horizontal strings, optionally leaving some stripes out."""
    require_positive("stripes", stripes)
    width = (max_y - min_y) / stripes
    if max_x - min_x <= width:
        raise InvalidSpineError("sheet is too narrow for its stripe width")

    skipped = set(skip)
    strings = []
    for n in range(stripes):
        if n in skipped:
            continue
        y = min_y + (n + 0.5) * width
        spine = ((min_x + width / 2.0, y), (max_x - width / 2.0, y))
        strings.append(PhysicalString(f"{sheet_id}.s{n}", spine, width))
    return rectangle_region(sheet_id, min_x, min_y, max_x, max_y), tuple(strings)


@dataclass(frozen=True)
class Cylinder:
    radius: float
    height: float
    lateral_area: float

    def to_dict(self) -> dict:
        return asdict(self)


def roll_cylinder(sheet_width: float, sheet_length: float) -> Cylinder:
    """Roll a flat sheet around its length axis; the sheet width becomes the circumference."""
    require_positive("sheet_width", sheet_width)
    require_positive("sheet_length", sheet_length)
    return Cylinder(
        radius=sheet_width / (2.0 * math.pi),
        height=sheet_length,
        lateral_area=sheet_width * sheet_length,
    )

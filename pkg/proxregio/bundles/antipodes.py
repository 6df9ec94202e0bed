from __future__ import annotations

import math
from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from itertools import product

import numpy as np

from proxregio.core.errors import ParameterError
from proxregio.core.settings import DEFAULT_EPSILON, FEATURE_TOLERANCE
from proxregio.description.descriptive import describe, dsnear
from proxregio.description.factory import create_probe
from proxregio.description.registry import FeatureVector, ProbeRegistry
from proxregio.geometry.primitives import Box, Region
from proxregio.geometry.scene import Scene
from proxregio.geometry.shapes import rectangle_region

Cell = tuple[int, ...]
MatchPredicate = Callable[[FeatureVector, FeatureVector], bool]


class GridTopology(str, Enum):
    CIRCLE = "circle"
    SPHERE_LATLONG = "sphere_latlong"
    TORUS = "torus"


def _check_shape(topology: GridTopology, shape: tuple[int, ...]) -> None:
    dims = 1 if topology == GridTopology.CIRCLE else 2
    if len(shape) != dims or any(n < 1 for n in shape):
        raise ParameterError("shape", shape, f"A {topology.value} grid needs {dims} positive dimensions")
    if topology == GridTopology.CIRCLE and shape[0] % 2:
        raise ParameterError("shape", shape, "A circle grid needs an even number of cells")
    if topology == GridTopology.TORUS and (shape[0] % 2 or shape[1] % 2):
        raise ParameterError("shape", shape, "A torus grid needs even dimensions")
    if topology == GridTopology.SPHERE_LATLONG and shape[1] % 2:
        raise ParameterError("shape", shape, "A sphere grid needs an even number of longitudes")


def grid_cells(shape: tuple[int, ...]) -> tuple[Cell, ...]:
    return tuple(product(*(range(n) for n in shape)))


def antipode_of(topology: GridTopology, shape: tuple[int, ...], cell: Cell) -> Cell:
    if topology == GridTopology.CIRCLE:
        (n,) = shape
        return ((cell[0] + n // 2) % n,)
    if topology == GridTopology.TORUS:
        n, m = shape
        return ((cell[0] + n // 2) % n, (cell[1] + m // 2) % m)
    # latitude bands mirror across the equator; pole caps are not cells
    n_lat, n_lon = shape
    return (n_lat - 1 - cell[0], (cell[1] + n_lon // 2) % n_lon)


@dataclass(frozen=True)
class AntipodalGrid:
    """Discrete sphere-like surface: cells, a fixed-point-free antipode and a feature field."""

    id: str
    topology: GridTopology
    shape: tuple[int, ...]
    values: tuple[tuple[float, ...], ...]
    layout: tuple[str, ...]
    tolerance: float = FEATURE_TOLERANCE

    def __post_init__(self) -> None:
        topology = GridTopology(self.topology)
        shape = tuple(int(n) for n in self.shape)
        _check_shape(topology, shape)
        values = tuple(tuple(float(v) for v in row) for row in self.values)
        if len(values) != math.prod(shape):
            raise ParameterError("values", len(values), f"Grid '{self.id}' needs {math.prod(shape)} field rows")
        if any(len(row) != len(self.layout) for row in values):
            raise ParameterError("values", self.layout, f"Grid '{self.id}' rows must match the layout")
        if not all(math.isfinite(v) for row in values for v in row):
            raise ParameterError("values", None, f"Grid '{self.id}' field has non-finite entries")
        object.__setattr__(self, "topology", topology)
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "layout", tuple(self.layout))

    @cached_property
    def cells(self) -> tuple[Cell, ...]:
        return grid_cells(self.shape)

    @cached_property
    def _position(self) -> dict[Cell, int]:
        return {cell: n for n, cell in enumerate(self.cells)}

    def antipode(self, cell: Cell) -> Cell:
        return antipode_of(self.topology, self.shape, tuple(cell))

    def field(self, cell: Cell) -> FeatureVector:
        return FeatureVector(self.values[self._position[tuple(cell)]], self.layout)

    def cell_region(self, cell: Cell, pitch: float = 1.0) -> Region:
        """The cell laid out on a flat net, column index along x."""
        i, j = (cell[0], 0) if len(cell) == 1 else cell
        label = ",".join(str(c) for c in cell)
        return rectangle_region(f"{self.id}[{label}]", j * pitch, i * pitch, (j + 1) * pitch, (i + 1) * pitch)

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "topology": self.topology.value,
            "shape": list(self.shape),
            "layout": list(self.layout),
            "values": [list(row) for row in self.values],
        }


@dataclass(frozen=True)
class AntipodalMatch:
    cell: Cell
    antipode: Cell
    value: FeatureVector
    antipode_value: FeatureVector


def find_antipodal_match(
    grid: AntipodalGrid, predicate: MatchPredicate | None = None
) -> AntipodalMatch | None:
    """First cell (in row-major order) whose field matches the field at its antipode."""
    if predicate is None:
        values = np.asarray(grid.values, dtype=float).reshape(len(grid.cells), len(grid.layout))
        opposite = np.array([grid._position[grid.antipode(c)] for c in grid.cells], dtype=int)
        hits = np.flatnonzero(np.all(np.abs(values - values[opposite]) <= grid.tolerance, axis=1))
        candidates = [grid.cells[int(n)] for n in hits[:1]]
    else:
        candidates = (c for c in grid.cells if predicate(grid.field(c), grid.field(grid.antipode(c))))

    for cell in candidates:
        other = grid.antipode(cell)
        return AntipodalMatch(cell, other, grid.field(cell), grid.field(other))
    return None


def _net_scene(grid: AntipodalGrid, pitch: float, cell_size: float, epsilon: float) -> Scene:
    registry = ProbeRegistry(
        tuple(create_probe("custom_constant", name=name) for name in grid.layout), grid.tolerance
    )
    regions = []
    for cell in grid.cells:
        net = grid.cell_region(cell, pitch)
        # the field value rides on the region as stored features
        regions.append(Region(net.id, net.outer, features=dict(zip(grid.layout, grid.field(cell).values))))
    rows, cols = grid.shape[0], grid.shape[1] if len(grid.shape) > 1 else 1
    box = Box(-pitch, -pitch, (cols + 1) * pitch, (rows + 1) * pitch)
    return Scene(tuple(regions), box, epsilon=epsilon, cell_size=cell_size, registry=registry)


def find_strong_antipodal_match(
    grid: AntipodalGrid,
    *,
    pitch: float = 1.0,
    cell_size: float = 0.25,
    epsilon: float = DEFAULT_EPSILON,
) -> AntipodalMatch | None:
    """First cell whose net region is descriptively strongly near its antipode's region.

    Each net region carries its field value as features, so the interior cells of a
    region and of its antipode share a description exactly when the field values match.
    """
    if not grid.layout:
        raise ParameterError("layout", grid.layout, "Strong antipodal search needs at least one feature")
    if not cell_size < pitch / 2:
        raise ParameterError("cell_size", cell_size, "Net cells need interior subregions: cell_size < pitch / 2")

    scene = _net_scene(grid, pitch, cell_size, epsilon)
    for n, cell in enumerate(grid.cells):
        other = grid.antipode(cell)
        if dsnear(scene.regions[n], scene.regions[grid._position[other]], scene):
            return AntipodalMatch(cell, other, grid.field(cell), grid.field(other))
    return None


def uniform_field(
    grid_id: str,
    topology: GridTopology | str,
    shape: Sequence[int],
    value: Sequence[float],
    layout: Sequence[str],
) -> AntipodalGrid:
    count = math.prod(shape)
    return AntipodalGrid(grid_id, GridTopology(topology), tuple(shape), (tuple(value),) * count, tuple(layout))


def symmetric_field(
    grid_id: str,
    topology: GridTopology | str,
    shape: Sequence[int],
    base: np.ndarray,
    layout: Sequence[str],
) -> AntipodalGrid:
    """F(c) = G(c) + G(⌐c): every cell matches its antipode."""
    topology, shape = GridTopology(topology), tuple(shape)
    _check_shape(topology, shape)
    cells = grid_cells(shape)
    position = {c: n for n, c in enumerate(cells)}
    g = np.asarray(base, dtype=float).reshape(len(cells), len(layout))
    opposite = [position[antipode_of(topology, shape, c)] for c in cells]
    field = g + g[opposite]
    return AntipodalGrid(grid_id, topology, shape, tuple(map(tuple, field)), tuple(layout))


def antisymmetric_field(
    grid_id: str,
    topology: GridTopology | str,
    shape: Sequence[int],
    layout: Sequence[str] = ("f",),
) -> AntipodalGrid:
    """F(⌐c) = −F(c) with |F| ≥ 1 everywhere, so no cell matches its antipode."""
    topology, shape = GridTopology(topology), tuple(shape)
    _check_shape(topology, shape)
    values: dict[Cell, tuple[float, ...]] = {}
    for n, cell in enumerate(grid_cells(shape)):
        if cell in values:
            continue
        magnitude = float(n + 1)
        values[cell] = (magnitude,) * len(layout)
        values[antipode_of(topology, shape, cell)] = (-magnitude,) * len(layout)
    rows = tuple(values[c] for c in grid_cells(shape))
    return AntipodalGrid(grid_id, topology, shape, rows, tuple(layout))


def described_grid(
    grid_id: str,
    topology: GridTopology | str,
    shape: Sequence[int],
    registry: ProbeRegistry,
    features: Callable[[Cell], Mapping[str, float]] = lambda cell: {},
    *,
    pitch: float = 1.0,
) -> AntipodalGrid:
    """Grid whose field is Φ of each net cell region carrying ``features(cell)``."""
    topology, shape = GridTopology(topology), tuple(shape)
    _check_shape(topology, shape)
    skeleton = AntipodalGrid(grid_id, topology, shape, ((),) * math.prod(shape), ())
    rows = []
    for cell in skeleton.cells:
        region = skeleton.cell_region(cell, pitch)
        region = Region(region.id, region.outer, features=dict(features(cell)))
        rows.append(describe(region, registry).values)
    return AntipodalGrid(grid_id, topology, shape, tuple(rows), registry.names, registry.tolerance)

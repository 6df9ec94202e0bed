from __future__ import annotations

import math
from collections import deque
from functools import lru_cache

import numpy as np
import shapely

from proxregio.core.errors import PreconditionError
from proxregio.core.guards import require_positive
from proxregio.geometry.measures import measure
from proxregio.geometry.primitives import Point2, Region, SubregionCell
from proxregio.geometry.shapes import point_region


@lru_cache(maxsize=4096)
def _clipped_grid(region: Region, h: float) -> tuple[SubregionCell, ...]:
    geom = region.geometry
    min_x, min_y, max_x, max_y = geom.bounds
    nx = max(1, math.ceil((max_x - min_x) / h - 1e-9))
    ny = max(1, math.ceil((max_y - min_y) / h - 1e-9))

    ii, jj = np.meshgrid(np.arange(nx), np.arange(ny), indexing="ij")
    ii, jj = ii.ravel(), jj.ravel()
    x0 = min_x + ii * h
    y0 = min_y + jj * h
    boxes = shapely.box(x0, y0, np.minimum(x0 + h, max_x), np.minimum(y0 + h, max_y))
    pieces = shapely.intersection(boxes, geom)

    if region.is_hole_region:
        keep = shapely.length(pieces) > 0.0
        interior = np.zeros(len(pieces), dtype=bool)
    else:
        keep = shapely.area(pieces) > 0.0
        interior = shapely.contains_properly(geom, boxes)

    cells = []
    for k in np.flatnonzero(keep):
        piece = pieces[k]
        cells.append(
            SubregionCell(
                owner=region.id,
                index=(int(ii[k]), int(jj[k])),
                polygon=piece,
                interior_cell=bool(interior[k]),
                features=region.effective_features(piece.representative_point()),
            )
        )
    return tuple(cells)


def subregion_grid(region: Region, h: float) -> tuple[SubregionCell, ...]:
    """Clip a pitch-``h`` grid anchored at the region's lower-left bound to the region."""
    require_positive("h", h)
    diameter = measure(region).diameter
    if h >= diameter:
        raise PreconditionError(
            "subregion_grid", f"pitch {h} is not below the diameter {diameter:g} of '{region.id}'"
        )
    return _clipped_grid(region, h)


def region_cells(region: Region, h: float) -> tuple[SubregionCell, ...]:
    """The region's grid cells, or a single whole-region cell when it is narrower than ``h``."""
    require_positive("h", h)
    return _clipped_grid(region, h)


def cell_adjacency(cells: tuple[SubregionCell, ...]) -> dict[tuple[int, int], list[tuple[int, int]]]:
    by_index = {cell.index: cell for cell in cells}
    graph: dict[tuple[int, int], list[tuple[int, int]]] = {index: [] for index in by_index}
    for (i, j), cell in by_index.items():
        for di in (-1, 0, 1):
            for dj in (-1, 0, 1):
                other = by_index.get((i + di, j + dj))
                if other is None or other is cell:
                    continue
                if cell.polygon.intersects(other.polygon):
                    graph[(i, j)].append(other.index)
    return graph


def cells_connected(cells: tuple[SubregionCell, ...]) -> bool:
    graph = cell_adjacency(cells)
    if not graph:
        return False
    start = next(iter(graph))
    seen = {start}
    queue = deque([start])
    while queue:
        for nxt in graph[queue.popleft()]:
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return len(seen) == len(graph)


def cell_point_region(cell: SubregionCell, epsilon: float) -> Region:
    """Point-sized region at the cell's representative point, carrying the cell's features."""
    rep = cell.polygon.representative_point()
    return point_region(
        f"{cell.owner}[{cell.index[0]},{cell.index[1]}]",
        Point2(rep.x, rep.y),
        epsilon,
        features=cell.features,
    )

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from functools import cached_property
from typing import TYPE_CHECKING, Any

from proxregio.core.errors import InvalidRegionError, ParameterError, RegionLookupError
from proxregio.core.settings import DEFAULT_CELL_SIZE, DEFAULT_EPSILON
from proxregio.geometry.primitives import Box, Region

if TYPE_CHECKING:
    from proxregio.bundles.antipodes import AntipodalGrid
    from proxregio.description.registry import ProbeRegistry
    from proxregio.strings.worldsheets import PhysicalString

UNIVERSE_ID = "__universe__"


@dataclass(frozen=True)
class Scene:
    """The finite universe X: named regions inside a bounding box."""

    regions: tuple[Region, ...]
    box: Box
    epsilon: float = DEFAULT_EPSILON
    cell_size: float = DEFAULT_CELL_SIZE
    registry: ProbeRegistry | None = None
    strings: tuple[PhysicalString, ...] = ()
    grids: tuple[AntipodalGrid, ...] = field(default=(), hash=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "regions", tuple(self.regions))
        object.__setattr__(self, "strings", tuple(self.strings))
        object.__setattr__(self, "grids", tuple(self.grids))

        if not self.epsilon > 0:
            raise ParameterError("epsilon", self.epsilon)
        if not (self.epsilon < self.cell_size < self.box.diagonal):
            raise ParameterError(
                "cell_size",
                self.cell_size,
                f"Expected epsilon < cell_size < box diagonal, got {self.epsilon} / "
                f"{self.cell_size} / {self.box.diagonal}",
            )

        seen: set[str] = set()
        for region in self.regions:
            if region.id in seen or region.id == UNIVERSE_ID:
                raise InvalidRegionError(region.id, "region id is not unique in the scene")
            seen.add(region.id)
            self._require_inside(region)

        for string in self.strings:
            self._require_inside(string.region)

    def _require_inside(self, region: Region) -> None:
        if not self.box.polygon.buffer(self.epsilon).covers(region.geometry):
            raise InvalidRegionError(region.id, "region leaves the scene box", "PG.3")

    @cached_property
    def _index(self) -> dict[str, Region]:
        return {region.id: region for region in self.regions}

    @cached_property
    def universe(self) -> Region:
        b = self.box
        return Region(
            id=UNIVERSE_ID,
            outer=((b.min_x, b.min_y), (b.max_x, b.min_y), (b.max_x, b.max_y), (b.min_x, b.max_y)),
        )

    @property
    def region_ids(self) -> tuple[str, ...]:
        return tuple(region.id for region in self.regions)

    def region(self, region_id: str) -> Region:
        if region_id == UNIVERSE_ID:
            return self.universe
        try:
            return self._index[region_id]
        except KeyError:
            raise RegionLookupError(region_id) from None

    def contains(self, region: Region) -> bool:
        if region.id == UNIVERSE_ID:
            return region == self.universe
        return self._index.get(region.id) == region

    def require(self, *regions: Region) -> None:
        for region in regions:
            if not self.contains(region):
                raise RegionLookupError(region.id)

    def string(self, string_id: str) -> PhysicalString:
        for string in self.strings:
            if string.id == string_id:
                return string
        raise RegionLookupError(string_id)

    def grid(self, grid_id: str) -> AntipodalGrid:
        for grid in self.grids:
            if grid.id == grid_id:
                return grid
        raise RegionLookupError(grid_id)

    def with_regions(self, *extra: Region) -> Scene:
        return dataclasses.replace(self, regions=self.regions + tuple(extra))

    def replace(self, **changes: Any) -> Scene:
        return dataclasses.replace(self, **changes)

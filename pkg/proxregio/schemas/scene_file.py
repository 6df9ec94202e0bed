from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator

from proxregio.core.settings import (
    DEFAULT_CELL_SIZE,
    DEFAULT_EPSILON,
    FEATURE_TOLERANCE,
    SCENE_FILE_VERSION,
)

Coordinate = tuple[float, float]


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


class PatchFile(StrictModel):
    outer: list[Coordinate]
    holes: list[list[Coordinate]] = []
    features: dict[str, float] = {}


class RegionFile(StrictModel):
    id: str = Field(min_length=1)
    outer: list[Coordinate]
    holes: list[list[Coordinate]] = []
    is_hole: bool = False
    features: dict[str, float] = {}
    patches: list[PatchFile] = []


class ProbeFile(StrictModel):
    kind: str
    name: str | None = None
    value: float | None = None


class ProbesFile(StrictModel):
    tolerance: float = FEATURE_TOLERANCE
    items: list[ProbeFile] = Field(min_length=1)


class StringFile(StrictModel):
    id: str = Field(min_length=1)
    spine: list[Coordinate]
    width: float
    closed: bool = False


class GridFile(StrictModel):
    id: str = Field(min_length=1)
    topology: Literal["circle", "sphere_latlong", "torus"]
    resolution: list[int] = Field(min_length=1, max_length=2)
    layout: list[str]
    field: list[list[float]]
    tolerance: float = FEATURE_TOLERANCE


class SceneFile(StrictModel):
    version: int
    box: tuple[float, float, float, float]
    epsilon: float = DEFAULT_EPSILON
    cell_size: float = DEFAULT_CELL_SIZE
    probes: ProbesFile | None = None
    regions: list[RegionFile] = []
    strings: list[StringFile] = []
    grids: list[GridFile] = []

    @field_validator("version")
    @classmethod
    def _known_version(cls, value: int) -> int:
        if value != SCENE_FILE_VERSION:
            raise ValueError(f"unsupported scene file version {value}, expected {SCENE_FILE_VERSION}")
        return value
